#include "trihom/invariants.hpp"

#include <algorithm>
#include <functional>

namespace trihom {

namespace {

Tri at_qa(int q, int a, int delta) { return {q, a, delta - q - a}; }

// d_1 ranks carried by one block or zigzag, added into r
void block_ranks(const Block& b, std::map<Tri, long>& r) {
  for (int w = -b.n; w <= b.n; w += 2) r[at_qa(2 * w, b.a_top, b.delta)] += 1;
  for (int w = -b.n - 1; w <= b.n - 1; w += 2) r[at_qa(2 * w, b.a_top - 2, b.delta)] += 1;
}

void zigzag_ranks(const Zigzag& z, std::map<Tri, long>& r) {
  if (z.type == 1)
    for (int w = -z.k; w <= z.k - 2; w += 2) r[at_qa(2 * w, z.a_top, z.delta)] += 1;
  else
    for (int w = -z.k + 1; w <= z.k - 1; w += 2) r[at_qa(2 * w, z.a_top, z.delta)] += 1;
}

Tri zigzag_survivor(const Zigzag& z) {
  return z.type == 1 ? at_qa(2 * z.k, z.a_top, z.delta) : at_qa(-2 * z.k, z.a_top - 2, z.delta);
}

using Irreps = std::map<std::pair<int, int>, std::map<int, long>>;

bool take(Irreps& m, int delta, int a, int n) {
  auto it = m.find({delta, a});
  if (it == m.end()) return false;
  auto jt = it->second.find(n);
  if (jt == it->second.end()) return false;
  if (--jt->second == 0) it->second.erase(jt);
  if (it->second.empty()) m.erase(it);
  return true;
}

void give(Irreps& m, int delta, int a, int n) { ++m[{delta, a}][n]; }

class BlockSearch {
 public:
  BlockSearch(int S, const std::map<Tri, long>& ranks) : S_(S), ranks_(ranks) {
    std::erase_if(ranks_, [](auto& e) { return e.second == 0; });
  }

  void run(Irreps m) { dfs(m); }
  std::vector<Decomposition> found;

 private:
  static constexpr size_t cap = 64;

  // (Delta ascending, a descending) first nonempty cell; its largest n
  static std::tuple<int, int, int> top(const Irreps& m) {
    const std::pair<int, int>* best = nullptr;
    for (auto& [k, v] : m)
      if (!best || k.first < best->first || (k.first == best->first && k.second > best->second)) best = &k;
    return {best->first, best->second, m.at(*best).rbegin()->first};
  }

  void dfs(Irreps& m) {
    if (found.size() >= cap) return;
    if (m.empty()) {
      if (cur_.zigzags.size() == 1 && consistent()) found.push_back(cur_);
      return;
    }
    auto [delta, a, n] = top(m);
    take(m, delta, a, n);
    // full block
    {
      std::vector<std::tuple<int, int, int>> parts = {{delta, a - 2, n + 1}, {delta, a - 4, n}};
      if (n >= 1) parts.push_back({delta, a - 2, n - 1});
      std::vector<std::tuple<int, int, int>> got;
      for (auto& [d, aa, nn] : parts) {
        if (!take(m, d, aa, nn)) break;
        got.push_back({d, aa, nn});
      }
      if (got.size() == parts.size()) {
        cur_.blocks.push_back({delta, a, n});
        dfs(m);
        cur_.blocks.pop_back();
      }
      for (auto& [d, aa, nn] : got) give(m, d, aa, nn);
    }
    if (cur_.zigzags.empty()) {
      // type 1: L(n) over L(n-1); n = 0 is the lone generator
      if (n == 0 || take(m, delta, a - 2, n - 1)) {
        cur_.zigzags.push_back({1, delta, a, n});
        dfs(m);
        cur_.zigzags.pop_back();
        if (n > 0) give(m, delta, a - 2, n - 1);
      }
      // type 2: L(n) over L(n+1)
      if (take(m, delta, a - 2, n + 1)) {
        cur_.zigzags.push_back({2, delta, a, n + 1});
        dfs(m);
        cur_.zigzags.pop_back();
        give(m, delta, a - 2, n + 1);
      }
    }
    give(m, delta, a, n);
  }

  bool consistent() const {
    const Zigzag& z = cur_.zigzags.front();
    if (zigzag_survivor(z) != Tri{S_, -S_, -S_}) return false;
    std::map<Tri, long> r;
    for (auto& b : cur_.blocks) block_ranks(b, r);
    zigzag_ranks(z, r);
    return r == ranks_;
  }

  int S_;
  std::map<Tri, long> ranks_;
  Decomposition cur_;
};

}  // namespace

SlNCollapse slN_collapse(const TrigradedDims& h, int N, int S) {
  DeltaProfile p = delta_profile(h);
  if (N < 2) throw InvariantError("sl(N) needs N >= 2");
  if (N <= p.thickness)
    throw InvariantError("N = " + std::to_string(N) + " does not exceed the Delta-thickness " +
                         std::to_string(p.thickness));
  SlNCollapse r;
  r.N = N;
  for (auto& [x, d] : h.dims) r.dims[{x.q_sl(N), x.t_dgr()}] += d;
  r.s = Rat(-S, 2);
  r.s.canonicalize();
  r.j = -(N - 1) * S;
  r.genus_bound = abs(r.s);
  return r;
}

StructureReport structure_checks(const TrigradedDims& h) {
  StructureReport r;
  for (auto& [x, d] : h.dims)
    if (h.at({-x.q, x.a, x.t + 2 * x.q}) != d) r.symmetry_violations.push_back(x);
  r.symmetric = r.symmetry_violations.empty();

  // (Delta, a) -> q -> dim
  std::map<std::pair<int, int>, std::map<int, long>> rows;
  for (auto& [x, d] : h.dims) rows[{x.delta(), x.a}][x.q] = d;
  for (auto& [key, row] : rows) {
    auto dim = [&](int q) {
      auto it = row.find(q);
      return it == row.end() ? 0L : it->second;
    };
    int qmax = 0;
    for (auto& [q, d] : row) qmax = std::max(qmax, std::abs(q));
    std::set<int> bad;
    for (int q = 0; q <= qmax; q += 2) {
      // moving away from the middle never increases the dimension
      if (dim(q + 4) > dim(q)) bad.insert(q % 4);
      if (dim(-q - 4) > dim(-q)) bad.insert(q % 4);
      long m = dim(q) - dim(q + 4);
      if (m > 0) r.irreps[key][q / 2] = m;
    }
    for (int rem : bad)
      r.unimodality_violations.push_back("Delta=" + std::to_string(key.first) + " a=" + std::to_string(key.second) +
                                         " q=" + std::to_string(rem) + " mod 4");
  }
  r.unimodal = r.unimodality_violations.empty();
  return r;
}

int BlockDecomposition::zigzag_count(int type) const {
  return static_cast<int>(std::count_if(primary.zigzags.begin(), primary.zigzags.end(),
                                        [&](const Zigzag& z) { return z.type == type; }));
}

BlockDecomposition block_decomposition(const TrigradedDims& h, int S, const std::map<Tri, long>& d1_ranks) {
  StructureReport st = structure_checks(h);
  if (!st.symmetric || !st.unimodal) throw InvariantError("table is not symmetric and unimodal; no sl(2) blocks");
  BlockSearch bs(S, d1_ranks);
  bs.run(st.irreps);
  if (bs.found.empty()) throw InvariantError("no decomposition into blocks and one zigzag fits the table");
  BlockDecomposition r;
  r.primary = bs.found.front();
  r.alternatives = std::move(bs.found);
  return r;
}

}  // namespace trihom
