#include "trihom/invariants.hpp"

#include <algorithm>
#include <functional>

namespace trihom {

namespace {

Tri cell_tri(int c, int a, int delta) { return {c - a, a, delta - c}; }

// d_1^(i) target of a cell
Tri push(const Tri& x, int i) { return {x.q + 2 * i, x.a - 2 * i, x.t + 2 - 2 * i}; }

void require_table(const TrigradedDims& h) {
  if (h.empty()) throw InvariantError("empty table");
  if (!h.all_even()) throw InvariantError("odd grading in a knot table");
}

struct EulerSolve {
  int S = 0;
  std::map<Tri, long> ranks;
};

// Lines of fixed (Delta, q + a); d_1 lowers a by 2 along them.
EulerSolve euler_solve(const TrigradedDims& h) {
  std::map<std::pair<int, int>, std::map<int, long, std::greater<>>> lines;
  for (auto& [x, d] : h.dims) lines[{x.delta(), x.q + x.a}][x.a] = d;
  std::optional<int> d0;
  for (auto& [key, line] : lines) {
    long chi = 0;
    for (auto& [a, d] : line) chi += (a / 2 % 2 ? -d : d);
    if (chi == 0) continue;
    auto [delta, c] = key;
    if (std::abs(chi) != 1 || c != 0)
      throw InvariantError("d_1-line Delta=" + std::to_string(delta) + " q+a=" + std::to_string(c) +
                           " has Euler characteristic " + std::to_string(chi));
    if (d0) throw InvariantError("two d_1-lines with |chi| = 1");
    if (chi != (delta / 2 % 2 ? -1 : 1))
      throw InvariantError("surviving d_1-line has the wrong sign");
    d0 = delta;
  }
  if (!d0) throw InvariantError("no d_1-line with |chi| = 1");
  EulerSolve r;
  r.S = -*d0;
  for (auto& [key, line] : lines) {
    auto [delta, c] = key;
    int top = line.begin()->first, bottom = line.rbegin()->first;
    long in = 0;
    for (int a = top; a >= bottom - 2; a -= 2) {
      auto it = line.find(a);
      long dim = it == line.end() ? 0 : it->second;
      long keep = (c == 0 && delta == *d0 && a == delta) ? 1 : 0;
      long out = dim - in - keep;
      if (out < 0)
        throw InvariantError("negative d_1 rank forced at Delta=" + std::to_string(delta) + " q+a=" +
                             std::to_string(c) + " a=" + std::to_string(a));
      if (out > 0) r.ranks[cell_tri(c, a, delta)] = out;
      in = out;
    }
    if (in != 0) throw InvariantError("d_1 runs off the end of a line");
  }
  return r;
}

// Exhaustive page-by-page rank search inside one q + a class.
class ClassSearch {
 public:
  struct Arrow {
    int page;
    size_t src, tgt;
  };
  struct Outcome {
    std::vector<long> ranks;   // one per arrow
    std::optional<size_t> survivor;
  };

  ClassSearch(int c, const std::vector<std::pair<Tri, long>>& cells) : c_(c) {
    for (auto& [x, d] : cells) {
      idx_[x] = cells_.size();
      cells_.push_back(x);
      dim_.push_back(d);
    }
    int maxd = INT32_MIN, mind = INT32_MAX;
    for (auto& x : cells_) maxd = std::max(maxd, x.delta()), mind = std::min(mind, x.delta());
    pages_ = (maxd - mind) / 2 + 1;
    for (int r = 1; r <= pages_; ++r)
      for (size_t s = 0; s < cells_.size(); ++s) {
        auto it = idx_.find(push(cells_[s], r));
        if (it != idx_.end()) arrows_.push_back({r, s, it->second});
      }
    // arrows are grouped by page; remember where each page starts
    for (int r = 1; r <= pages_ + 1; ++r)
      page_start_.push_back(std::find_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.page >= r; }) -
                            arrows_.begin());
  }

  void run() {
    std::vector<long> e = dim_, used(cells_.size(), 0), ranks(arrows_.size(), 0);
    dfs(1, page_start_[0], e, used, ranks);
  }

  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Tri>& cells() const { return cells_; }
  const std::vector<Outcome>& consistent() const { return consistent_; }
  long searched = 0, excluded = 0;

  bool higher(const Outcome& o) const {
    for (size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].page >= 2 && o.ranks[k]) return true;
    return false;
  }

 private:
  void dfs(int page, size_t k, std::vector<long>& e, std::vector<long>& used, std::vector<long>& ranks) {
    if (k == page_start_[page]) {
      // page finished: pass to the next
      std::vector<long> next(e.size());
      for (size_t i = 0; i < e.size(); ++i) next[i] = e[i] - used[i];
      if (page == pages_) {
        leaf(next, ranks);
        return;
      }
      if (!feasible(page + 1, next)) return;
      std::vector<long> u(e.size(), 0);
      dfs(page + 1, k, next, u, ranks);
      return;
    }
    const Arrow& ar = arrows_[k];
    long room = std::min(e[ar.src] - used[ar.src], e[ar.tgt] - used[ar.tgt]);
    for (long rho = 0; rho <= std::max(0L, room); ++rho) {
      ranks[k] = rho;
      used[ar.src] += rho;
      used[ar.tgt] += rho;
      dfs(page, k + 1, e, used, ranks);
      used[ar.src] -= rho;
      used[ar.tgt] -= rho;
    }
    ranks[k] = 0;
  }

  // Cells no later page can touch are final; they must fit the target.
  // A cut branch in which a higher differential still had room counts as
  // an excluded scenario.
  bool feasible(int from_page, const std::vector<long>& e) {
    std::vector<bool> live(e.size(), false);
    bool room = false;
    for (size_t k = page_start_[from_page - 1]; k < arrows_.size(); ++k) {
      auto& ar = arrows_[k];
      if (e[ar.src] > 0 && e[ar.tgt] > 0) live[ar.src] = live[ar.tgt] = room = true;
    }
    long fixed = 0;
    bool ok = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (live[i] || !e[i]) continue;
      fixed += e[i];
      if (!survivor_cell(i)) ok = false;
    }
    ok = ok && fixed <= (c_ == 0 ? 1 : 0);
    if (!ok) {
      ++searched;
      if (room) ++excluded;
    }
    return ok;
  }

  bool survivor_cell(size_t i) const { return c_ == 0 && cells_[i].a == cells_[i].delta(); }

  void leaf(const std::vector<long>& e, const std::vector<long>& ranks) {
    ++searched;
    long total = 0;
    std::optional<size_t> at;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) total += e[i], at = i;
    Outcome o{ranks, std::nullopt};
    bool ok = c_ == 0 ? (total == 1 && survivor_cell(*at)) : total == 0;
    if (ok) {
      if (c_ == 0) o.survivor = at;
      consistent_.push_back(std::move(o));
    } else if (higher(o)) {
      ++excluded;
    }
  }

  int c_;
  std::vector<Tri> cells_;
  std::vector<long> dim_;
  std::map<Tri, size_t> idx_;
  int pages_ = 1;
  std::vector<Arrow> arrows_;
  std::vector<size_t> page_start_;
  std::vector<Outcome> consistent_;
};

}  // namespace

std::string to_string(D1Status s) {
  switch (s) {
    case D1Status::standard_single_delta: return "standard_single_delta";
    case D1Status::standard_gap: return "standard_gap";
    case D1Status::standard_exhaustive: return "standard_exhaustive";
    case D1Status::undetermined: return "undetermined";
  }
  return "?";
}

DeltaProfile delta_profile(const TrigradedDims& h) {
  if (h.empty()) throw InvariantError("empty table");
  DeltaProfile p;
  p.support = h.delta_support();
  p.thickness = (*p.support.rbegin() - *p.support.begin()) / 2 + 1;
  p.thin = p.support.size() == 1;
  for (auto& [x, d] : h.dims) p.slices[x.delta()].add(x, d);
  return p;
}

D1Certificate certify_d1_standard(const TrigradedDims& h) {
  require_table(h);
  D1Certificate cert;
  std::set<int> sup = h.delta_support();

  for (auto& [x, d] : h.dims) {
    for (int i = 2; x.delta() + 2 - 2 * i >= *sup.begin(); ++i) {
      if (h.at(push(x, i))) cert.potential.push_back({i, x, push(x, i)});
      else cert.blocked.push_back({i, x, push(x, i)});
    }
    // empty sources above x
    for (int i = 2; x.delta() - 2 + 2 * i <= *sup.rbegin(); ++i) {
      Tri src{x.q - 2 * i, x.a + 2 * i, x.t - 2 + 2 * i};
      if (!h.at(src)) cert.blocked.push_back({i, src, x});
    }
  }

  auto finish = [&](D1Status st, std::string why) {
    EulerSolve e = euler_solve(h);
    cert.status = st;
    cert.reason = std::move(why);
    cert.S = e.S;
    cert.d1_ranks = std::move(e.ranks);
    return cert;
  };

  if (sup.size() == 1) return finish(D1Status::standard_single_delta, "single Delta");
  int lo = *sup.begin(), hi = *sup.rbegin();
  if (hi == lo + 2) {
    int top = INT32_MIN, bot = INT32_MAX;
    for (auto& [x, d] : h.dims) {
      if (x.delta() == hi) top = std::max(top, x.a);
      if (x.delta() == lo) bot = std::min(bot, x.a);
    }
    if (top - 4 < bot) return finish(D1Status::standard_gap, "gap: max a in Delta+2 minus 4 below min a in Delta");
  }
  if (cert.potential.empty())
    return finish(D1Status::standard_gap, "empty cells: no populated pair joined by a higher differential");

  // stage 3
  std::map<int, std::vector<std::pair<Tri, long>>> classes;
  for (auto& [x, d] : h.dims) classes[x.q + x.a].emplace_back(x, d);
  std::set<int> S_values;
  bool higher_open = false;
  std::map<Tri, long> ranks;
  bool ranks_unique = true;
  for (auto& [c, cells] : classes) {
    ClassSearch cs(c, cells);
    cs.run();
    cert.scenarios_searched += cs.searched;
    cert.excluded_scenarios += cs.excluded;
    if (cs.consistent().empty())
      throw InvariantError("no consistent spectral sequence in the class q+a=" + std::to_string(c));
    std::optional<std::map<Tri, long>> class_ranks;
    for (auto& o : cs.consistent()) {
      std::optional<int> S;
      if (o.survivor) S_values.insert(-cs.cells()[*o.survivor].a), S = -cs.cells()[*o.survivor].a;
      std::map<Tri, long> r1;
      for (size_t k = 0; k < cs.arrows().size(); ++k)
        if (cs.arrows()[k].page == 1 && o.ranks[k]) r1[cs.cells()[cs.arrows()[k].src]] += o.ranks[k];
      if (!class_ranks) class_ranks = r1;
      else if (*class_ranks != r1) ranks_unique = false;
      if (!cs.higher(o)) continue;
      higher_open = true;
      D1Scenario sc{c, S, {}};
      for (size_t k = 0; k < cs.arrows().size(); ++k) {
        auto& ar = cs.arrows()[k];
        if (ar.page >= 2 && o.ranks[k]) sc.higher.push_back({{ar.page, cs.cells()[ar.src], cs.cells()[ar.tgt]}, o.ranks[k]});
      }
      cert.open.push_back(std::move(sc));
    }
    ranks.insert(class_ranks->begin(), class_ranks->end());
  }
  if (higher_open || S_values.size() != 1 || !ranks_unique) {
    cert.status = D1Status::undetermined;
    cert.reason = higher_open ? "a higher differential is consistent with the dimensions" : "S not unique";
    if (S_values.size() == 1) cert.S = *S_values.begin();
    return cert;
  }
  finish(D1Status::standard_exhaustive, "exhaustive rank search");
  if (*cert.S != *S_values.begin() || cert.d1_ranks != ranks)
    throw InvariantError("rank search and Euler characteristics disagree");
  return cert;
}

SInvariant s_invariant(const TrigradedDims& h, const D1Certificate& cert) {
  require_table(h);
  if (!cert.standard()) throw InvariantError("S needs a d_1-standard certificate");
  EulerSolve e = euler_solve(h);
  if (cert.S && *cert.S != e.S) throw InvariantError("certificate S disagrees with the Euler characteristics");
  SInvariant r;
  r.S = e.S;
  r.d1_ranks = std::move(e.ranks);
  r.d1_survivor = {r.S, -r.S, -r.S};
  const Tri& x = r.d1_survivor;
  r.d_minus1_survivor = {-x.q, x.a, x.t + 2 * x.q};
  return r;
}

}  // namespace trihom
