#include "rankone/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "rankone/errors.hpp"

namespace rankone::io {

namespace {

Error bad(const std::string& what) { return Error(ErrorCode::kInvalidInput, what); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Short human form; values below 1e-14 in magnitude print as 0.
std::string num(double x) {
  if (std::abs(x) < 1e-14) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string num(cdouble z) {
  const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  if (im == 0.0) return num(re);
  if (re == 0.0) return num(im) + "i";
  return num(re) + (im < 0 ? "-" : "+") + num(std::abs(im)) + "i";
}


std::string ints(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "]";
}

// JSON has no inf or nan; those travel as strings.
Json scalar_to_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double scalar_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw bad("bad scalar " + s);
}

Json tol_to_json(const Tolerances& t) {
  return {{"rank", t.rank}, {"cluster", t.cluster}, {"match", t.match}, {"regular", t.regular}};
}

Tolerances tol_from_json(const Json& j) {
  Tolerances t;
  t.rank = j.at("rank").get<double>();
  t.cluster = j.at("cluster").get<double>();
  t.match = j.at("match").get<double>();
  t.regular = j.at("regular").get<double>();
  return t;
}

Json bound_to_json(const BoundRecord& r) {
  Json j = {{"check", r.check},  {"k", r.k},         {"before", r.before},
            {"after", r.after},  {"value", r.value}, {"lower", r.lower},
            {"upper", r.upper},  {"satisfied", r.satisfied}, {"slack", r.slack}};
  j["lambda"] = r.has_lambda ? to_json(r.lambda) : Json(nullptr);
  return j;
}

BoundRecord bound_from_json(const Json& j) {
  BoundRecord r;
  r.check = j.at("check").get<std::string>();
  r.has_lambda = !j.at("lambda").is_null();
  if (r.has_lambda) r.lambda = ext_complex_from_json(j.at("lambda"));
  r.k = j.at("k").get<int>();
  r.before = j.at("before").get<int>();
  r.after = j.at("after").get<int>();
  r.value = j.at("value").get<int>();
  r.lower = j.at("lower").get<int>();
  r.upper = j.at("upper").get<int>();
  r.satisfied = j.at("satisfied").get<bool>();
  r.slack = j.at("slack").get<int>();
  return r;
}

bool same_bound(const BoundRecord& a, const BoundRecord& b) {
  return a.check == b.check && a.has_lambda == b.has_lambda &&
         (!a.has_lambda || a.lambda == b.lambda) && a.k == b.k && a.before == b.before &&
         a.after == b.after && a.value == b.value && a.lower == b.lower && a.upper == b.upper &&
         a.satisfied == b.satisfied && a.slack == b.slack;
}

bool same_table(const SpectrumTable& a, const SpectrumTable& b) {
  if (a.name != b.name || a.n != b.n || a.M != b.M || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (!(x.lambda == y.lambda) || x.segre != y.segre || x.root_dim != y.root_dim ||
        x.tower != y.tower) {
      return false;
    }
  }
  return true;
}

template <typename T>
bool same_dense(const T& a, const T& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

}  // namespace

std::string num(const ExtComplex& z) { return z.is_infinite() ? "inf" : num(z.value()); }

Json to_json(cdouble z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExtComplex& z) { return z.is_infinite() ? Json("inf") : to_json(z.value()); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

cdouble complex_from_json(const Json& j) {
  const ExtComplex z = ext_complex_from_json(j);
  if (z.is_infinite()) throw bad("infinite value where a number is required");
  return z.value();
}

ExtComplex ext_complex_from_json(const Json& j) {
  if (j.is_number()) return ExtComplex(j.get<double>());
  if (j.is_string()) return parse_ext_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return ExtComplex(cdouble(j[0].get<double>(), j[1].get<double>()));
  }
  throw bad("expected a number, [re, im] or a complex literal, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw bad("expected a vector, got " + j.dump());
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw bad("expected a matrix (list of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw bad("ragged matrix: row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json pencil_to_json(const Pencil& p) {
  return {{"format_version", kFormatVersion}, {"n", p.n()}, {"E", to_json(p.E())},
          {"A", to_json(p.A())}};
}

Json system_to_json(const DaeSystem& sys) {
  Json j = pencil_to_json(sys.pencil());
  j["b"] = to_json(sys.b);
  return j;
}

Pencil pencil_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("E") || !j.contains("A")) {
    throw bad("pencil file needs E and A");
  }
  const Matrix E = matrix_from_json(j.at("E"));
  const Matrix A = matrix_from_json(j.at("A"));
  if (E.rows() != E.cols() || A.rows() != A.cols() || E.rows() != A.rows()) {
    throw bad("E and A must be square of the same size");
  }
  if (j.contains("n") && j.at("n").get<int>() != E.rows()) {
    throw bad("n = " + std::to_string(j.at("n").get<int>()) + " but the matrices are " +
              std::to_string(E.rows()) + " x " + std::to_string(E.rows()));
  }
  return Pencil(E, A);
}

DaeSystem system_from_json(const Json& j, const Tolerances& tol) {
  const Pencil p = pencil_from_json(j);
  if (!j.contains("b")) throw bad("system file needs b");
  return DaeSystem(p.E(), p.A(), vector_from_json(j.at("b")), tol);
}

Json rank_one_to_json(const RankOnePencil& p) {
  Json j = {{"format_version", kFormatVersion}, {"form", std::string(to_string(p.form))},
            {"u", to_json(p.u)}, {"w", to_json(p.w)}};
  if (p.form == RankOneForm::kDegenerate) {
    j["alpha"] = to_json(p.alpha);
    j["beta"] = to_json(p.beta);
  } else {
    j["v"] = to_json(p.v);
  }
  return j;
}

RankOnePencil rank_one_from_json(const Json& j, double tol_rank) {
  if (!j.is_object()) throw bad("rank-one file must be an object");
  if (!j.contains("form")) {
    const char* f = j.contains("F") ? "F" : "E";
    const char* g = j.contains("G") ? "G" : "A";
    if (!j.contains(f) || !j.contains(g)) throw bad("rank-one file needs a form or F, G");
    return decompose(matrix_from_json(j.at(f)), matrix_from_json(j.at(g)), tol_rank);
  }
  const RankOneForm form = parse_rank_one_form(j.at("form").get<std::string>());
  const Vector u = vector_from_json(j.at("u"));
  const Vector w = vector_from_json(j.at("w"));
  if (form == RankOneForm::kDegenerate) {
    return RankOnePencil::degenerate(complex_from_json(j.at("alpha")),
                                     complex_from_json(j.at("beta")), u, w);
  }
  const Vector v = vector_from_json(j.at("v"));
  if (u.size() != v.size() || u.size() != w.size()) throw bad("u, v, w differ in length");
  return form == RankOneForm::kLeftVector ? RankOnePencil::left(u, v, w)
                                          : RankOnePencil::right(u, v, w);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw bad("cannot write " + path);
  out << j.dump(2) << "\n";
}

Vector parse_vector(const std::string& text) {
  const auto parts = split(text, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const ExtComplex z = parse_ext_complex(trim(parts[i]));
    if (z.is_infinite()) throw bad("vector entries must be finite");
    v(static_cast<Eigen::Index>(i)) = z.value();
  }
  return v;
}

std::vector<Target> parse_targets(const std::string& text) {
  std::vector<Target> out;
  for (const auto& raw : split(text, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) throw bad("empty target in '" + text + "'");
    const auto colon = item.rfind(':');
    Target t;
    t.value = parse_ext_complex(trim(item.substr(0, colon)));
    if (colon != std::string::npos) {
      const std::string m = trim(item.substr(colon + 1));
      std::size_t used = 0;
      try {
        t.mult = std::stoi(m, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != m.size() || m.empty()) throw bad("bad multiplicity '" + m + "'");
    }
    if (t.mult <= 0) throw bad("multiplicities must be positive");
    out.push_back(t);
  }
  return out;
}

SpectrumTable spectrum_table(std::string name, const SpectralData& sd) {
  SpectrumTable t{std::move(name), sd.n, sd.M, {}};
  for (const auto& e : sd.eigs) t.rows.push_back({e.lambda, e.segre, e.root_dim, e.nullity_tower});
  return t;
}

SpectrumTable spectrum_table(std::string name, const std::vector<SpectrumEntry>& entries) {
  SpectrumTable t{std::move(name), 0, 0, {}};
  for (const auto& e : entries) {
    t.rows.push_back({e.lambda, {}, e.dim, {}});
    t.n += e.dim;
  }
  return t;
}

Json report_to_json(const Report& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = r.command;
  j["args"] = r.args;
  j["tolerances"] = tol_to_json(r.tol);
  j["real"] = r.real_mode;
  j["seed"] = r.seed;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["error_code"] = r.error_code;
  j["error_message"] = r.error_message;
  j["fields"] = Json::array();
  for (const auto& [k, v] : r.fields) j["fields"].push_back({k, v});
  j["scalars"] = Json::array();
  for (const auto& [k, v] : r.scalars) j["scalars"].push_back({k, scalar_to_json(v)});
  j["vectors"] = Json::array();
  for (const auto& [k, v] : r.vectors) j["vectors"].push_back({{"name", k}, {"value", to_json(v)}});
  j["matrices"] = Json::array();
  for (const auto& [k, m] : r.matrices) {
    j["matrices"].push_back(
        {{"name", k}, {"rows", m.rows()}, {"cols", m.cols()}, {"value", to_json(m)}});
  }
  j["spectra"] = Json::array();
  for (const auto& t : r.spectra) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      rows.push_back({{"lambda", to_json(row.lambda)},
                      {"segre", row.segre},
                      {"root_dim", row.root_dim},
                      {"tower", row.tower}});
    }
    j["spectra"].push_back({{"name", t.name}, {"n", t.n}, {"M", t.M}, {"rows", rows}});
  }
  j["bounds"] = Json::array();
  for (const auto& b : r.bounds) j["bounds"].push_back(bound_to_json(b));
  j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts) {
    j["verdicts"].push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.args = j.at("args").get<std::vector<std::string>>();
    r.tol = tol_from_json(j.at("tolerances"));
    r.real_mode = j.at("real").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.error_code = j.at("error_code").get<std::string>();
    r.error_message = j.at("error_message").get<std::string>();
    for (const auto& f : j.at("fields")) r.fields.emplace_back(f.at(0), f.at(1));
    for (const auto& s : j.at("scalars")) r.scalars.emplace_back(s.at(0), scalar_from_json(s.at(1)));
    for (const auto& v : j.at("vectors")) {
      r.vectors.emplace_back(v.at("name"), vector_from_json(v.at("value")));
    }
    for (const auto& m : j.at("matrices")) {
      Matrix value = matrix_from_json(m.at("value"));
      if (value.size() == 0) value.resize(m.at("rows").get<int>(), m.at("cols").get<int>());
      r.matrices.emplace_back(m.at("name"), value);
    }
    for (const auto& t : j.at("spectra")) {
      SpectrumTable table{t.at("name"), t.at("n"), t.at("M"), {}};
      for (const auto& row : t.at("rows")) {
        table.rows.push_back({ext_complex_from_json(row.at("lambda")),
                              row.at("segre").get<std::vector<int>>(), row.at("root_dim"),
                              row.at("tower").get<std::vector<int>>()});
      }
      r.spectra.push_back(std::move(table));
    }
    for (const auto& b : j.at("bounds")) r.bounds.push_back(bound_from_json(b));
    for (const auto& v : j.at("verdicts")) {
      r.verdicts.push_back({v.at("name"), v.at("passed"), v.at("detail")});
    }
  } catch (const Json::exception& e) {
    throw bad(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "command:";
  if (r.args.empty()) out << " " << r.command;
  for (const auto& a : r.args) out << " " << a;
  out << "\n";
  out << "tolerances: rank=" << num(r.tol.rank) << " cluster=" << num(r.tol.cluster)
      << " match=" << num(r.tol.match) << " regular=" << num(r.tol.regular) << "\n";
  out << "real: " << (r.real_mode ? "yes" : "no") << "  seed: " << r.seed << "\n";
  out << "status: " << r.status << " (exit " << r.exit_code << ")\n";
  if (!r.error_code.empty()) out << "error: " << r.error_code << ": " << r.error_message << "\n";
  for (const auto& [k, v] : r.fields) out << k << ": " << v << "\n";
  for (const auto& t : r.spectra) {
    out << "\nspectrum " << t.name << " (n=" << t.n << ", M=" << t.M << ")\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-28s %-14s %-6s %s\n", "lambda", "segre", "dim", "tower");
    out << line;
    for (const auto& row : t.rows) {
      std::snprintf(line, sizeof line, "  %-28s %-14s %-6d %s\n", num(row.lambda).c_str(),
                    row.segre.empty() ? "-" : ints(row.segre).c_str(), row.root_dim,
                    row.tower.empty() ? "-" : ints(row.tower).c_str());
      out << line;
    }
  }
  if (!r.vectors.empty()) out << "\n";
  for (const auto& [k, v] : r.vectors) {
    out << k << " = [";
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << num(v(i));
    out << "]\n";
  }
  for (const auto& [k, m] : r.matrices) {
    out << "\n" << k << " (" << m.rows() << " x " << m.cols() << ")\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << " ";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        char cell[48];
        std::snprintf(cell, sizeof cell, " %14s", num(m(i, c)).c_str());
        out << cell;
      }
      out << "\n";
    }
  }
  if (!r.scalars.empty()) out << "\n";
  for (const auto& [k, v] : r.scalars) {
    char cell[32];
    std::snprintf(cell, sizeof cell, "%.3e", v);
    out << k << ": " << cell << "\n";
  }
  if (!r.bounds.empty()) {
    int failed = 0;
    for (const auto& b : r.bounds) failed += b.satisfied ? 0 : 1;
    out << "\nbounds: " << r.bounds.size() << " checked, " << failed << " violated\n";
    for (const auto& b : r.bounds) {
      out << "  " << (b.satisfied ? "ok  " : "FAIL") << " " << b.check;
      if (b.has_lambda) out << " lambda=" << num(b.lambda);
      if (b.k > 0) out << " k=" << b.k;
      out << "  " << b.lower << " <= " << b.value << " <= " << b.upper << "\n";
    }
  }
  if (!r.verdicts.empty()) out << "\n";
  for (const auto& v : r.verdicts) {
    out << (v.passed ? "PASS " : "FAIL ") << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
  }
  return out.str();
}

bool same_report(const Report& a, const Report& b) {
  auto same_tol = [](const Tolerances& x, const Tolerances& y) {
    return x.rank == y.rank && x.cluster == y.cluster && x.match == y.match &&
           x.regular == y.regular;
  };
  if (a.command != b.command || a.args != b.args || !same_tol(a.tol, b.tol) ||
      a.real_mode != b.real_mode || a.seed != b.seed || a.status != b.status ||
      a.exit_code != b.exit_code || a.error_code != b.error_code ||
      a.error_message != b.error_message || a.fields != b.fields || a.scalars != b.scalars) {
    return false;
  }
  if (a.vectors.size() != b.vectors.size() || a.matrices.size() != b.matrices.size() ||
      a.spectra.size() != b.spectra.size() || a.bounds.size() != b.bounds.size() ||
      a.verdicts.size() != b.verdicts.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vectors.size(); ++i) {
    if (a.vectors[i].first != b.vectors[i].first ||
        !same_dense(a.vectors[i].second, b.vectors[i].second)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.matrices.size(); ++i) {
    if (a.matrices[i].first != b.matrices[i].first ||
        !same_dense(a.matrices[i].second, b.matrices[i].second)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.spectra.size(); ++i) {
    if (!same_table(a.spectra[i], b.spectra[i])) return false;
  }
  for (std::size_t i = 0; i < a.bounds.size(); ++i) {
    if (!same_bound(a.bounds[i], b.bounds[i])) return false;
  }
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    const auto& x = a.verdicts[i];
    const auto& y = b.verdicts[i];
    if (x.name != y.name || x.passed != y.passed || x.detail != y.detail) return false;
  }
  return true;
}

}  // namespace rankone::io
