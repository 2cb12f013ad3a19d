#pragma once

// Knot tables on disk: the canonical entry format, Poincare polynomials,
// a best-effort adapter for externally obtained NS-style lists, slice
// figures (ascii, svg) and the batch report.

#include "trihom/homology.hpp"
#include "trihom/invariants.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

struct ParseError : std::runtime_error {
  ParseError(const std::string& source, int line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

struct KnotRecord {
  std::string name;
  TrigradedDims dims;
  std::optional<std::string> braid;
  std::optional<std::string> family;   // two-bridge, alternating, nonalternating
  std::optional<int> signature;
  std::optional<int> rasmussen_s;
  std::optional<long> sl2_dim;         // total dimension of reduced sl(2) homology
  std::vector<std::string> comments;
  bool operator==(const KnotRecord&) const = default;
};

// Records start at "knot NAME".  Body lines:
//   entry q=.. a=.. t=.. dim=..
//   P = c*q^i*a^j*t^k + ...      (continuation lines start with '+')
//   convention NS | braid .. | family .. | signature .. | rasmussen_s .. | sl2_dim ..
// '#' starts a comment.  Gradings must be even and dimensions positive.
std::vector<KnotRecord> parse_dataset_text(const std::string& text, const std::string& source = "<input>");
std::vector<KnotRecord> parse_dataset(const std::filesystem::path& path);

// Sum of c q^i a^j t^k, c a positive integer.
TrigradedDims parse_poincare(const std::string& expr);
std::string format_poincare(const TrigradedDims& h);

// Canonical text of one record; parse_dataset_text inverts it.
std::string format_record(const KnotRecord& r);

// NS-style lists: one knot per line, "NAME<sep>POLY" with sep one of
// ':', ',', tab or space, t-powers possibly written t^(k).  Lines that
// fail are reported and skipped.
struct NsImport {
  std::vector<KnotRecord> records;
  std::vector<std::string> errors;   // "line N: message"
};
NsImport import_ns_format(const std::string& text);

struct RenderConfig {
  int cell = 28;
  int margin = 40;
  int panel_gap = 28;
  int font_size = 12;
  int circle_radius = 11;
  std::string circle_color = "#d62728";
  std::string grid_color = "#cccccc";
};

RenderConfig load_render_config(const std::filesystem::path& path);

enum class RenderFormat { ascii, svg };

// One panel per Delta, a vertical (up), q horizontal.  With S, circles at
// (S, -S) and (-S, -S) in the Delta = -S panel.
std::string render_slices(const TrigradedDims& h, std::optional<int> S, RenderFormat fmt,
                          const RenderConfig& cfg = {});

// {"reports": [...], "tables": {"delta_thickness": ..., "S_plus_s": ..., "dim_minus_sl2": ...}}
std::string report_document(const std::vector<KnotRecord>& records, const std::vector<InvariantReport>& reports);
void write_report(const std::vector<KnotRecord>& records, const std::vector<InvariantReport>& reports,
                  const std::filesystem::path& path);

}  // namespace trihom
