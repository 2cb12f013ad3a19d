#include "trihom/homology.hpp"

#include "space.hpp"

namespace trihom {

using detail::HPlus;
using detail::Key3;
using detail::Space;

// HHH blocks as dv-homology of H+, in H+ coordinates.
struct HomologyModel::Impl {
  BraidWord braid;
  Bicomplex C;
  std::unique_ptr<Space> sp;
  std::unique_ptr<HPlus> hp;
  TrigradedDims dims;
  GradingShift shift;
  std::vector<Class> basis;
  std::map<Key3, std::unique_ptr<Quotient>> blocks;   // raw key -> classes
  std::map<Key3, uint32_t> first;                     // raw key -> index of its first class
  std::optional<Op> E;

  // dv induced on H+ from block k to (Q, h, v+1), as columns
  std::vector<SparseVec> dv_columns(const Key3& k) {
    Key3 up{k[0], k[1], k[2] + 1};
    size_t d = hp->block(k).dim();
    std::vector<SparseVec> cols(d);
    for (uint32_t i = 0; i < d; ++i) {
      auto m = hp->induce(C.d_v, k, i);
      auto it = m.find(up);
      if (it != m.end()) cols[i] = it->second;
      if (m.size() > (it != m.end() ? 1u : 0u)) throw HomologyError("model: dv leaves its degree");
    }
    return cols;
  }

  const Quotient& block(const Key3& k) {
    auto it = blocks.find(k);
    if (it != blocks.end()) return *it->second;
    size_t d = hp->block(k).dim();
    std::vector<SparseVec> cyc, bnd;
    if (d) {
      Key3 up{k[0], k[1], k[2] + 1}, down{k[0], k[1], k[2] - 1};
      size_t du = hp->block(up).dim();
      if (du == 0) {
        for (uint32_t i = 0; i < d; ++i) cyc.push_back({{i, Rat(1)}});
      } else {
        cyc = kernel_basis(RatMatrix::from_columns(du, dv_columns(k)));
      }
      if (hp->block(down).dim())
        for (auto& c : dv_columns(down))
          if (!c.empty()) bnd.push_back(c);
    }
    return *blocks.emplace(k, std::make_unique<Quotient>(bnd, cyc)).first->second;
  }
};

HomologyModel::HomologyModel(const BraidWord& b, const Potential* pot, const ComputeOptions& opt)
    : impl_(std::make_unique<Impl>()) {
  Impl& I = *impl_;
  I.braid = b;
  I.dims = compute_triply_graded(b, opt);
  I.shift = opt.shift;
  I.C = build_bicomplex(b, pot, true, true);
  I.sp = std::make_unique<Space>(I.C);
  I.hp = std::make_unique<HPlus>(*I.sp);
  ClosureInfo ci = closure_info(b);
  int w = ci.writhe, n = b.strands, len = static_cast<int>(b.length());
  Tri z = opt.shift.apply(0, 0, 0, w, n, len);
  for (auto& [x, d] : I.dims.dims) {
    int h = (z.a - x.a) / 2;
    int v = (x.t - z.t) / 2;
    int Q = x.q - z.q + 2 * h;
    Key3 k{Q, h, v};
    if (opt.shift.apply(Q, h, v, w, n, len) != x) throw HomologyError("model: grading map is not invertible");
    const Quotient& q = I.block(k);
    if (static_cast<long>(q.dim()) != d) throw HomologyError("model: block dimension disagrees with the table");
    I.first[k] = static_cast<uint32_t>(I.basis.size());
    for (size_t r = 0; r < q.dim(); ++r) I.basis.push_back({k, x});
  }
}

HomologyModel::~HomologyModel() = default;

const std::vector<HomologyModel::Class>& HomologyModel::basis() const { return impl_->basis; }
const TrigradedDims& HomologyModel::dims() const { return impl_->dims; }
const Bicomplex& HomologyModel::complex() const { return impl_->C; }

RatMatrix HomologyModel::induce(const Op& op) {
  Impl& I = *impl_;
  size_t n = I.basis.size();
  std::vector<Entry> ent;
  for (auto& [k, f] : I.first) {
    const Quotient& src = I.block(k);
    for (uint32_t r = 0; r < src.dim(); ++r) {
      for (auto& [tk, y] : I.hp->induce(op, k, src.reps()[r])) {
        const Quotient& dst = I.block(tk);
        SparseVec c = dst.coords(y);
        if (c.empty()) continue;
        auto it = I.first.find(tk);
        if (it == I.first.end()) throw HomologyError("model: induced map leaves the computed table");
        for (auto& [j, x] : c) ent.push_back({it->second + j, f + r, x});
      }
    }
  }
  return RatMatrix::from_entries(n, n, std::move(ent));
}

RatMatrix HomologyModel::induce_E() {
  Impl& I = *impl_;
  if (!I.E) {
    ChainOperators ops = attach_chain_operators(I.C);
    if (!ops.E) throw HomologyError("model: E needs a knot closure");
    I.E = *ops.E;
  }
  return induce(*I.E);
}

RatMatrix HomologyModel::induce_dW() {
  if (!impl_->C.pot) throw HomologyError("model: no potential");
  return induce(impl_->C.d_pot);
}

}  // namespace trihom
