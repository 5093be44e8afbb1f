#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rankone/bounds.hpp"
#include "rankone/feedback.hpp"
#include "rankone/pencil.hpp"
#include "rankone/placement.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/spectral.hpp"

namespace rankone::io {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// Complex entries are written as [re, im]; plain numbers and literals such
// as "1-2i" are accepted on input. Infinity is the string "inf".
Json to_json(cdouble z);
Json to_json(const ExtComplex& z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
cdouble complex_from_json(const Json& j);
ExtComplex ext_complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
/// Rejects ragged rows.
Matrix matrix_from_json(const Json& j);

/// {"format_version", "n", "E", "A"[, "b"]}
Json pencil_to_json(const Pencil& p);
Json system_to_json(const DaeSystem& sys);
Pencil pencil_from_json(const Json& j);
DaeSystem system_from_json(const Json& j, const Tolerances& tol = {});

/// {"form": "left" | "right" | "degenerate", "u", "v", "w"[, "alpha", "beta"]}.
/// A file holding "E"/"A" (or "F"/"G") matrices instead is decomposed.
Json rank_one_to_json(const RankOnePencil& p);
RankOnePencil rank_one_from_json(const Json& j, double tol_rank = 1e-9);

/// Ten significant digits; parts below 1e-14 in magnitude print as 0.
std::string num(const ExtComplex& z);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// "1,0,2-1i"
Vector parse_vector(const std::string& text);
/// "1:1,-1:2,inf:1,2+3i:1"; a missing ":m" means multiplicity 1.
std::vector<Target> parse_targets(const std::string& text);

struct SpectrumRow {
  ExtComplex lambda;
  std::vector<int> segre;
  int root_dim = 0;
  std::vector<int> tower;
};

struct SpectrumTable {
  std::string name;
  int n = 0;
  int M = 0;
  std::vector<SpectrumRow> rows;
};

SpectrumTable spectrum_table(std::string name, const SpectralData& sd);
SpectrumTable spectrum_table(std::string name, const std::vector<SpectrumEntry>& entries);

struct Verdict {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Everything a command reports. The text rendering is derived from it, so
/// the JSON form carries at least as much.
struct Report {
  std::string command;
  std::vector<std::string> args;
  Tolerances tol;
  bool real_mode = false;
  std::uint64_t seed = 0;
  /// "ok", "verification_failed" or "error".
  std::string status = "ok";
  int exit_code = 0;
  std::string error_code;
  std::string error_message;

  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, Vector>> vectors;
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<SpectrumTable> spectra;
  std::vector<BoundRecord> bounds;
  std::vector<Verdict> verdicts;
};

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
std::string render_text(const Report& r);
/// Exact equality, entry by entry.
bool same_report(const Report& a, const Report& b);

}  // namespace rankone::io
