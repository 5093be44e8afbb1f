#include "rankone/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rankone/bounds.hpp"
#include "rankone/feedback.hpp"
#include "rankone/linalg.hpp"
#include "rankone/placement.hpp"
#include "rankone/restricted.hpp"

namespace rankone::cli {

namespace {

using io::Report;

constexpr double kMaterializeTol = 1e-12;
const cdouble kResidualPoint(0.37, 0.61);

struct Globals {
  Tolerances tol;
  bool real = false;
  bool json = false;
  std::uint64_t seed = PlacementOptions{}.seed;
};

PlacementOptions options(const Globals& g) {
  PlacementOptions o;
  o.tol = g.tol;
  o.real_mode = g.real;
  o.seed = g.seed;
  return o;
}

std::string join_targets(const std::vector<Target>& targets) {
  return format_targets(PlacementSpec{targets, -1});
}

void add_rank_one(Report& r, const RankOnePencil& p) {
  r.fields.emplace_back("form", std::string(to_string(p.form)));
  if (p.form == RankOneForm::kDegenerate) {
    r.fields.emplace_back("alpha", to_string(p.alpha));
    r.fields.emplace_back("beta", to_string(p.beta));
    r.vectors.emplace_back("u", p.u);
    r.vectors.emplace_back("w", p.w);
  } else {
    r.vectors.emplace_back("u", p.u);
    r.vectors.emplace_back("v", p.v);
    r.vectors.emplace_back("w", p.w);
  }
  const RankOneMatrices m = materialize(p);
  r.matrices.emplace_back("F", m.F);
  r.matrices.emplace_back("G", m.G);
}

void add_placement(Report& r, const PlacementResult& res) {
  add_rank_one(r, res.perturbation);
  r.fields.emplace_back("gamma", to_string(res.gamma));
  r.scalars.emplace_back("det_residual", res.det_residual);
  r.scalars.emplace_back("solve_residual", res.solve_residual);
  r.spectra.push_back(io::spectrum_table("expected", res.expected));
  r.spectra.push_back(io::spectrum_table("A+P", res.achieved));
  std::string detail;
  for (const auto& f : res.failures) detail += (detail.empty() ? "" : "; ") + f;
  r.verdicts.push_back({"spectrum", res.verified, detail});
}

// Commands fill the report; errors propagate to run().
void analyze(Report& r, const Pencil& p, const Globals& g) {
  const SpectralData sd = eig_structure(p, g.tol);
  r.spectra.push_back(io::spectrum_table("A", sd));
  r.fields.emplace_back("n", std::to_string(sd.n));
  r.fields.emplace_back("M", std::to_string(sd.M));
  const WeierstrassForm wf = weierstrass(p, sd, g.real, g.tol);
  r.fields.emplace_back("r", std::to_string(wf.r));
  std::string blocks;
  for (const auto& b : wf.blocks) {
    if (!blocks.empty()) blocks += ", ";
    blocks += io::num(b.lambda) + (b.conjugate_pair ? " (pair)" : "") + " size " +
              std::to_string(b.size);
  }
  r.fields.emplace_back("blocks", blocks);
  r.scalars.emplace_back("weierstrass_cond", wf.cond);
  r.scalars.emplace_back("weierstrass_residual", weierstrass_residual(p, wf, kResidualPoint));
}

void wcf(Report& r, const Pencil& p, const Globals& g) {
  const SpectralData sd = eig_structure(p, g.tol);
  const WeierstrassForm wf = weierstrass(p, sd, g.real, g.tol);
  r.fields.emplace_back("r", std::to_string(wf.r));
  r.matrices.emplace_back("S", wf.S);
  r.matrices.emplace_back("T", wf.T);
  r.matrices.emplace_back("J", wf.J);
  r.matrices.emplace_back("N", wf.N);
  r.scalars.emplace_back("weierstrass_cond", wf.cond);
  r.scalars.emplace_back("weierstrass_residual", weierstrass_residual(p, wf, kResidualPoint));
}

void decompose_cmd(Report& r, const Pencil& p, const Globals& g) {
  const RankOnePencil rp = decompose(p.E(), p.A(), g.tol.rank);
  add_rank_one(r, rp);
  const RankOneMatrices m = materialize(rp);
  const double scale = std::max({linalg::norm_inf(p.E()), linalg::norm_inf(p.A()), 1e-300});
  const double residual =
      std::max(linalg::norm_inf(m.F - p.E()), linalg::norm_inf(m.G - p.A())) / scale;
  r.scalars.emplace_back("materialize_residual", residual);
  r.verdicts.push_back({"materialization", residual <= kMaterializeTol, ""});
}

void place_cmd(Report& r, const Pencil& p, const std::vector<Target>& targets,
               const Globals& g) {
  const SpectralData sd = eig_structure(p, g.tol);
  r.spectra.push_back(io::spectrum_table("A", sd));
  r.fields.emplace_back("targets", join_targets(targets));
  add_placement(r, place(p, sd, PlacementSpec{targets, -1}, options(g)));
}

void place_restricted_cmd(Report& r, const Pencil& p, const Vector& u, const Vector& v,
                          const std::vector<Target>& targets, const Globals& g) {
  const SpectralData sd = eig_structure(p, g.tol);
  r.spectra.push_back(io::spectrum_table("A", sd));
  const PoleProfile profile = pole_profile(p, sd, u, v, g.tol);
  std::string orders;
  for (const auto& e : profile.entries) {
    orders += (orders.empty() ? "" : ", ") + io::num(e.lambda) + ":" + std::to_string(e.order);
  }
  r.fields.emplace_back("pole_orders", orders);
  r.fields.emplace_back("M(A,u,v)", std::to_string(profile.M_uv));
  r.fields.emplace_back("targets", join_targets(targets));
  add_placement(r, solve_w(p, u, v, PlacementSpec{targets, -1}, options(g)));
}

void feedback_cmd(Report& r, const DaeSystem& sys, const std::vector<Target>& targets,
                  const Globals& g) {
  const HautusResult h = hautus_controllable(sys, g.tol);
  r.fields.emplace_back("hautus", h.controllable ? "controllable"
                                                 : "fails at " + io::num(*h.witness));
  r.fields.emplace_back("targets", join_targets(targets));
  const FeedbackResult fr = place_feedback(sys, PlacementSpec{targets, -1}, options(g));
  r.vectors.emplace_back("f", fr.f);
  add_placement(r, fr.placement);
}

void inverse_cmd(Report& r, const std::vector<Target>& before, const std::vector<Target>& after,
                 const Globals& g) {
  r.fields.emplace_back("before", join_targets(before));
  r.fields.emplace_back("after", join_targets(after));
  const InverseResult inv = inverse_construct(before, after, options(g));
  r.matrices.emplace_back("E", inv.pencil.E());
  r.matrices.emplace_back("A", inv.pencil.A());
  add_placement(r, inv.placement);
}

void bounds_cmd(Report& r, const Pencil& p, const RankOnePencil& rp, const Globals& g) {
  const SpectralData before = eig_structure(p, g.tol);
  const SpectralData after = eig_structure(perturb(p, rp), g.tol);
  r.spectra.push_back(io::spectrum_table("A", before));
  r.spectra.push_back(io::spectrum_table("A+P", after));
  add_rank_one(r, rp);
  const BoundsReport b = check_all_bounds(before, after, g.tol.match);
  r.bounds = b.records;
  r.verdicts.push_back({"bounds", b.overall_pass(), ""});
}

}  // namespace

RunResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-one perturbations of regular matrix pencils sE - A", "rankone"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-rank", g.tol.rank, "Relative singular value cutoff for ranks")
      ->capture_default_str();
  app.add_option("--tol-cluster", g.tol.cluster, "Finest eigenvalue clustering radius")
      ->capture_default_str();
  app.add_option("--tol-match", g.tol.match, "Radius for matching eigenvalues to targets")
      ->capture_default_str();
  app.add_flag("--real", g.real, "Real arithmetic: real Weierstrass form and real vectors");
  app.add_flag("--json", g.json, "Print the report as JSON");
  app.add_option("--seed", g.seed, "Seed for the randomized verification samples")
      ->capture_default_str();

  std::string pencil_path;
  std::string rank_one_path;
  std::string targets_text;
  std::string before_text;
  std::string after_text;
  std::string u_text;
  std::string v_text;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  CLI::App* c_analyze = sub("analyze", "Eigenvalues, Segre characteristics, towers and WCF summary");
  c_analyze->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  CLI::App* c_wcf = sub("wcf", "Weierstrass canonical form S, T, J, N");
  c_wcf->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  CLI::App* c_decompose = sub("decompose", "Structured factors of a rank-one pencil sF - G (E = F, A = G)");
  c_decompose->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  CLI::App* c_place = sub("place", "Place M(A) eigenvalues with a rank-one perturbation");
  c_place->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  c_place->add_option("--targets", targets_text, "value:mult list, e.g. 1:1,-1:1,inf:1")->required();
  CLI::App* c_restricted = sub("place-restricted", "Placement with P(s) = (s u + v) w^* for fixed u, v");
  c_restricted->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  c_restricted->add_option("--u", u_text, "Comma-separated entries of u")->required();
  c_restricted->add_option("--v", v_text, "Comma-separated entries of v")->required();
  c_restricted->add_option("--targets", targets_text, "value:mult list")->required();
  CLI::App* c_feedback = sub("feedback",
                             "State feedback f for d/dt Ex = Ax + bu; closed loop A + b f^* "
                             "(plain transpose for real systems)");
  c_feedback->add_option("system", pencil_path, "System JSON file (pencil with b)")->required();
  c_feedback->add_option("--targets", targets_text, "value:mult list")->required();
  CLI::App* c_inverse = sub("inverse", "Pencil and perturbation realizing two given spectra");
  c_inverse->add_option("--before", before_text, "Spectrum of A, value:mult list")->required();
  c_inverse->add_option("--after", after_text, "Spectrum of A + P, value:mult list")->required();
  CLI::App* c_bounds = sub("verify-bounds", "Check the multiplicity bounds for A and A + P");
  c_bounds->add_option("pencil", pencil_path, "Pencil JSON file")->required();
  c_bounds->add_option("rank1", rank_one_path, "Rank-one JSON file (form/u/v/w or F/G)")->required();

  std::vector<const char*> argv{"rankone"};
  for (const auto& a : args) argv.push_back(a.c_str());
  RunResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? kExitOk : kExitError;
    result.report.status = code == 0 ? "ok" : "error";
    result.report.exit_code = result.exit_code;
    return result;
  }

  Report& r = result.report;
  CLI::App* chosen = app.get_subcommands().front();
  r.command = chosen->get_name();
  r.args = args;
  r.tol = g.tol;
  r.real_mode = g.real;
  r.seed = g.seed;
  try {
    if (chosen == c_analyze) {
      analyze(r, io::pencil_from_json(io::read_json_file(pencil_path)), g);
    } else if (chosen == c_wcf) {
      wcf(r, io::pencil_from_json(io::read_json_file(pencil_path)), g);
    } else if (chosen == c_decompose) {
      decompose_cmd(r, io::pencil_from_json(io::read_json_file(pencil_path)), g);
    } else if (chosen == c_place) {
      place_cmd(r, io::pencil_from_json(io::read_json_file(pencil_path)),
                io::parse_targets(targets_text), g);
    } else if (chosen == c_restricted) {
      const Pencil p = io::pencil_from_json(io::read_json_file(pencil_path));
      const Vector u = io::parse_vector(u_text);
      const Vector v = io::parse_vector(v_text);
      if (u.size() != p.n() || v.size() != p.n()) {
        throw Error(ErrorCode::kInvalidInput, "u and v need " + std::to_string(p.n()) + " entries");
      }
      place_restricted_cmd(r, p, u, v, io::parse_targets(targets_text), g);
    } else if (chosen == c_feedback) {
      feedback_cmd(r, io::system_from_json(io::read_json_file(pencil_path), g.tol),
                   io::parse_targets(targets_text), g);
    } else if (chosen == c_inverse) {
      inverse_cmd(r, io::parse_targets(before_text), io::parse_targets(after_text), g);
    } else if (chosen == c_bounds) {
      const Pencil p = io::pencil_from_json(io::read_json_file(pencil_path));
      const RankOnePencil rp = io::rank_one_from_json(io::read_json_file(rank_one_path), g.tol.rank);
      if (rp.n() != p.n()) throw Error(ErrorCode::kInvalidInput, "pencil and rank-one sizes differ");
      bounds_cmd(r, p, rp, g);
    }
    const bool passed = std::all_of(r.verdicts.begin(), r.verdicts.end(),
                                    [](const io::Verdict& v) { return v.passed; });
    result.exit_code = passed ? kExitOk : kExitVerificationFailed;
    r.status = passed ? "ok" : "verification_failed";
  } catch (const VerificationFailure& e) {
    add_placement(r, e.result());
    result.exit_code = kExitVerificationFailed;
    r.status = "verification_failed";
    r.error_code = std::string(to_string(e.code()));
    r.error_message = e.what();
  } catch (const Error& e) {
    result.exit_code = kExitError;
    r.status = "error";
    r.error_code = std::string(to_string(e.code()));
    r.error_message = e.what();
    err << "error: " << e.what() << "\n";
  }
  r.exit_code = result.exit_code;
  if (g.json) {
    out << io::report_to_json(r).dump(2) << "\n";
  } else if (result.exit_code != kExitError) {
    out << io::render_text(r);
  }
  return result;
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr).exit_code;
}

}  // namespace rankone::cli
