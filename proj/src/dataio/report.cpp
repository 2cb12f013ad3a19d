#include "trihom/dataio.hpp"

#include "json.hpp"

#include <fstream>

namespace trihom {

using nlohmann::ordered_json;

std::string report_document(const std::vector<KnotRecord>& records, const std::vector<InvariantReport>& reports) {
  if (records.size() != reports.size()) throw std::invalid_argument("one report per record");
  ordered_json doc;
  doc["reports"] = ordered_json::array();
  for (auto& r : reports) doc["reports"].push_back(ordered_json::parse(report_json(r)));

  // family -> thickness -> count; the thin/non-thin split is the |Delta| = 1, 2 columns
  std::map<std::string, std::map<int, long>> by_family;
  std::map<int, long> total;
  std::map<int, long> s_sum, dim_gap;
  for (size_t i = 0; i < records.size(); ++i) {
    const KnotRecord& k = records[i];
    const InvariantReport& r = reports[i];
    int th = r.profile.thickness;
    ++by_family[k.family.value_or("unknown")][th];
    ++total[th];
    if (r.profile.thin) continue;
    if (k.rasmussen_s && r.S) ++s_sum[r.S->S + *k.rasmussen_s];
    if (k.sl2_dim) ++dim_gap[k.dims.total() - *k.sl2_dim];
  }
  auto row = [](const std::map<int, long>& m) {
    ordered_json j = ordered_json::object();
    for (auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
  };
  ordered_json t;
  ordered_json dt = ordered_json::object();
  for (const char* fam : {"two-bridge", "alternating", "nonalternating", "unknown"})
    if (by_family.count(fam)) dt[fam] = row(by_family[fam]);
  for (auto& [fam, m] : by_family)
    if (!dt.contains(fam)) dt[fam] = row(m);
  dt["total"] = row(total);
  t["delta_thickness"] = dt;
  t["S_plus_s"] = row(s_sum);
  t["dim_minus_sl2"] = row(dim_gap);
  doc["tables"] = t;
  return doc.dump(2) + "\n";
}

void write_report(const std::vector<KnotRecord>& records, const std::vector<InvariantReport>& reports,
                  const std::filesystem::path& path) {
  std::string text = report_document(records, reports);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace trihom
