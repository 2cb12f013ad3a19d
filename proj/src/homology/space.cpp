#include "space.hpp"

#include <algorithm>

namespace trihom::detail {

Space::Space(const Bicomplex& c) : c_(&c), nvars_(static_cast<int>(c.ring.free_count())) {
  bool first = true;
  for (uint32_t g = 0; g < c.size(); ++g) {
    const Generator& G = c.gens[g];
    gens_by_hv_[{G.h, G.v}].push_back(g);
    if (first) {
      hmin_ = hmax_ = G.h;
      vmin_ = vmax_ = G.v;
      first = false;
    }
    hmin_ = std::min(hmin_, G.h);
    hmax_ = std::max(hmax_, G.h);
    vmin_ = std::min(vmin_, G.v);
    vmax_ = std::max(vmax_, G.v);
  }
}

const Block& Space::block(const Key3& k) {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return *it->second;
  auto b = std::make_unique<Block>();
  b->key = k;
  auto g = gens_by_hv_.find({k[1], k[2]});
  if (g != gens_by_hv_.end())
    for (uint32_t gen : g->second) {
      int rest = k[0] - c_->gens[gen].qshift;
      if (rest < 0 || rest % 2) continue;
      for (auto& m : monomials(nvars_, rest / 2)) {
        b->index.emplace(std::make_pair(gen, m), static_cast<uint32_t>(b->basis.size()));
        b->basis.emplace_back(gen, m);
      }
    }
  return *blocks_.emplace(k, std::move(b)).first->second;
}

std::map<Key3, SparseVec> Space::apply(const Op& op, const Key3& k, uint32_t i) {
  return apply(op, k, SparseVec{{i, Rat(1)}});
}

std::map<Key3, SparseVec> Space::apply(const Op& op, const Key3& k, const SparseVec& x) {
  std::map<Key3, std::map<uint32_t, Rat>> acc;
  const Block& src = block(k);
  for (auto& [i, coef] : x) {
    auto [g, mu] = src.basis[i];
    for (auto& [t, p] : op.col(g)) {
      const Generator& T = c_->gens[t];
      for (auto& [nu, c] : p.terms()) {
        Key3 tk{2 * degree(mu) + 2 * degree(nu) + T.qshift, T.h, T.v};
        const Block& dst = block(tk);
        auto j = dst.index.find({t, mono_mul(mu, nu)});
        if (j == dst.index.end()) throw SoergelError("space: image outside the monomial basis");
        acc[tk][j->second] += coef * c;
      }
    }
  }
  std::map<Key3, SparseVec> out;
  for (auto& [tk, m] : acc) {
    SparseVec v;
    for (auto& [j, c] : m)
      if (c != 0) v.emplace_back(j, c);
    if (!v.empty()) out.emplace(tk, std::move(v));
  }
  return out;
}

std::vector<SparseVec> Space::images(const Op& op, const Key3& k, const Key3& to) {
  size_t n = block(k).size();
  std::vector<SparseVec> out(n);
  for (uint32_t i = 0; i < n; ++i) {
    auto m = apply(op, k, i);
    auto it = m.find(to);
    if (it != m.end()) out[i] = std::move(it->second);
  }
  return out;
}

}  // namespace trihom::detail

namespace trihom::detail {

const HBlock& HPlus::block(const Key3& k) {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return *it->second;
  const Bicomplex& C = sp_->complex();
  auto hb = std::make_unique<HBlock>();
  hb->key = k;
  size_t n = sp_->block(k).size();
  if (n) {
    Key3 down{k[0], k[1] - 1, k[2]}, up{k[0], k[1] + 1, k[2]};
    std::vector<SparseVec> cycles;
    size_t m = sp_->block(down).size();
    if (m == 0) {
      for (uint32_t i = 0; i < n; ++i) cycles.push_back({{i, Rat(1)}});
    } else {
      cycles = kernel_basis(RatMatrix::from_columns(m, sp_->images(C.d_plus, k, down)));
    }
    std::vector<SparseVec> bnd;
    if (sp_->block(up).size())
      for (auto& v : sp_->images(C.d_plus, up, k))
        if (!v.empty()) bnd.push_back(std::move(v));
    hb->quot = Quotient(bnd, cycles);
  }
  return *blocks_.emplace(k, std::move(hb)).first->second;
}

SparseVec HPlus::lift(const Key3& k, const SparseVec& x) {
  const HBlock& hb = block(k);
  SparseVec out;
  for (auto& [i, c] : x) axpy(out, c, hb.reps()[i]);
  return out;
}

std::map<Key3, SparseVec> HPlus::induce(const Op& op, const Key3& k, uint32_t i) {
  return induce(op, k, SparseVec{{i, Rat(1)}});
}

std::map<Key3, SparseVec> HPlus::induce(const Op& op, const Key3& k, const SparseVec& x) {
  std::map<Key3, SparseVec> out;
  for (auto& [tk, y] : sp_->apply(op, k, lift(k, x))) {
    const HBlock& hb = block(tk);
    SparseVec c = hb.quot.coords(y);
    if (!c.empty()) out.emplace(tk, std::move(c));
  }
  return out;
}

}  // namespace trihom::detail
