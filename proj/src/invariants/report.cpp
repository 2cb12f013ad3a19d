#include "trihom/invariants.hpp"

#include "json.hpp"

namespace trihom {

namespace {

using nlohmann::ordered_json;

ordered_json tri_json(const Tri& x) { return {{"q", x.q}, {"a", x.a}, {"t", x.t}}; }

std::string rat_str(const Rat& r) { return r.get_str(); }

ordered_json decomposition_json(const Decomposition& d) {
  ordered_json j;
  j["blocks"] = ordered_json::array();
  for (auto& b : d.blocks) j["blocks"].push_back({{"delta", b.delta}, {"a_top", b.a_top}, {"n", b.n}});
  j["zigzags"] = ordered_json::array();
  for (auto& z : d.zigzags)
    j["zigzags"].push_back({{"type", z.type}, {"delta", z.delta}, {"a_top", z.a_top}, {"k", z.k}});
  return j;
}

}  // namespace

InvariantReport analyze(const std::string& name, const TrigradedDims& h, const AnalyzeOptions& opt,
                        std::optional<int> known_s) {
  InvariantReport r;
  r.name = name;
  r.known_s = known_s;
  r.profile = delta_profile(h);
  r.structure = structure_checks(h);
  r.cert = certify_d1_standard(h);
  if (!r.cert.standard()) {
    r.notes.push_back("d_1-standardness undetermined: " + r.cert.reason);
    return r;
  }
  r.S = s_invariant(h, r.cert);
  for (int N : opt.N) {
    if (N <= r.profile.thickness) {
      r.notes.push_back("sl(" + std::to_string(N) + ") skipped: N does not exceed the Delta-thickness");
      continue;
    }
    r.s_values.push_back(slN_collapse(h, N, r.S->S));
  }
  Rat g(std::abs(r.S->S), 2);
  g.canonicalize();
  r.genus_bound = g;
  if (r.profile.thin && known_s && *known_s != -r.S->S)
    r.notes.push_back("thin table with S != -s");
  if (opt.blocks) {
    try {
      r.blocks = block_decomposition(h, r.S->S, r.S->d1_ranks);
    } catch (const InvariantError& e) {
      r.notes.push_back(std::string("blocks: ") + e.what());
    }
  }
  return r;
}

std::string report_json(const InvariantReport& r, int indent) {
  ordered_json j;
  j["knot"] = r.name;
  j["delta_support"] = ordered_json(std::vector<int>(r.profile.support.begin(), r.profile.support.end()));
  j["thickness"] = r.profile.thickness;
  j["thin"] = r.profile.thin;
  j["S"] = r.S ? ordered_json(r.S->S) : ordered_json(nullptr);

  ordered_json c;
  c["status"] = to_string(r.cert.status);
  c["reason"] = r.cert.reason;
  c["potential"] = ordered_json::array();
  for (auto& p : r.cert.potential)
    c["potential"].push_back({{"page", p.page}, {"source", tri_json(p.source)}, {"target", tri_json(p.target)}});
  c["blocked_arrows"] = r.cert.blocked.size();
  c["scenarios_searched"] = r.cert.scenarios_searched;
  c["excluded_scenarios"] = r.cert.excluded_scenarios;
  c["open"] = ordered_json::array();
  for (auto& s : r.cert.open) {
    ordered_json o{{"q_plus_a", s.q_plus_a}, {"S", s.S ? ordered_json(*s.S) : ordered_json(nullptr)}};
    o["higher"] = ordered_json::array();
    for (auto& [ar, rk] : s.higher)
      o["higher"].push_back({{"page", ar.page}, {"source", tri_json(ar.source)}, {"target", tri_json(ar.target)},
                             {"rank", rk}});
    c["open"].push_back(o);
  }
  j["d1_status"] = c;

  j["d1_ranks"] = ordered_json::array();
  if (r.S)
    for (auto& [x, k] : r.S->d1_ranks) {
      ordered_json e = tri_json(x);
      e["rank"] = k;
      j["d1_ranks"].push_back(e);
    }

  j["s_values"] = ordered_json::array();
  for (auto& s : r.s_values)
    j["s_values"].push_back({{"potential", "x^" + std::to_string(s.N) + "-x"}, {"N", s.N}, {"s", rat_str(s.s)}, {"j", s.j}});
  j["genus_bound"] = r.genus_bound ? ordered_json(rat_str(*r.genus_bound)) : ordered_json(nullptr);
  if (r.known_s) j["rasmussen_s"] = *r.known_s;

  ordered_json sym{{"pass", r.structure.symmetric}, {"violations", ordered_json::array()}};
  for (auto& x : r.structure.symmetry_violations) sym["violations"].push_back(tri_json(x));
  j["symmetry"] = sym;
  j["unimodality"] = {{"pass", r.structure.unimodal}, {"violations", r.structure.unimodality_violations}};

  if (r.blocks) {
    ordered_json b = decomposition_json(r.blocks->primary);
    b["zigzag_count"] = {{"type1", r.blocks->zigzag_count(1)}, {"type2", r.blocks->zigzag_count(2)}};
    b["unique"] = r.blocks->unique();
    b["alternatives"] = ordered_json::array();
    for (size_t i = 1; i < r.blocks->alternatives.size(); ++i)
      b["alternatives"].push_back(decomposition_json(r.blocks->alternatives[i]));
    j["blocks"] = b;
  } else {
    j["blocks"] = nullptr;
  }
  j["notes"] = r.notes;
  return j.dump(indent);
}

}  // namespace trihom
