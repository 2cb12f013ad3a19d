#include "trihom/ratlin.hpp"

#include <algorithm>
#include <sstream>

namespace trihom {

namespace {

bool entry_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// Clear denominators of a rational row and return a primitive integer row.
IntVec to_int_row(const SparseVec& v) {
  Int l = 1;
  for (auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  for (auto& [i, x] : v) {
    Int n = x.get_num() * (l / x.get_den());
    out.emplace_back(i, std::move(n));
  }
  return out;
}

void make_primitive(IntVec& v) {
  if (v.empty()) return;
  Int g = 0;
  for (auto& [i, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [i, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y, merged.
IntVec comb(const Int& a, const IntVec& x, const Int& b, const IntVec& y) {
  IntVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  Int t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- RatMatrix

RatMatrix RatMatrix::from_entries(size_t rows, size_t cols, std::vector<Entry> e) {
  for (auto& x : e)
    if (x.row >= rows || x.col >= cols) throw std::out_of_range("RatMatrix: entry index out of range");
  std::sort(e.begin(), e.end(), entry_less);
  RatMatrix m(rows, cols);
  for (auto& x : e) {
    if (!m.e_.empty() && m.e_.back().row == x.row && m.e_.back().col == x.col) {
      m.e_.back().val += x.val;
      if (m.e_.back().val == 0) m.e_.pop_back();
    } else if (x.val != 0) {
      m.e_.push_back(std::move(x));
    }
  }
  return m;
}

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.e_.push_back({i, i, Rat(1)});
  return m;
}

RatMatrix RatMatrix::from_rows(size_t cols, const std::vector<SparseVec>& rows) {
  std::vector<Entry> e;
  for (size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, x] : rows[r]) e.push_back({r, c, x});
  return from_entries(rows.size(), cols, std::move(e));
}

RatMatrix RatMatrix::from_columns(size_t rows, const std::vector<SparseVec>& cols) {
  std::vector<Entry> e;
  for (size_t c = 0; c < cols.size(); ++c)
    for (auto& [r, x] : cols[c]) e.push_back({r, c, x});
  return from_entries(rows, cols.size(), std::move(e));
}

Rat RatMatrix::at(size_t r, size_t c) const {
  Entry key{r, c, Rat(0)};
  auto it = std::lower_bound(e_.begin(), e_.end(), key, entry_less);
  if (it != e_.end() && it->row == r && it->col == c) return it->val;
  return Rat(0);
}

RatMatrix RatMatrix::transpose() const {
  std::vector<Entry> e;
  e.reserve(e_.size());
  for (auto& x : e_) e.push_back({x.col, x.row, x.val});
  return from_entries(cols_, rows_, std::move(e));
}

std::vector<SparseVec> RatMatrix::row_vectors() const {
  std::vector<SparseVec> out(rows_);
  for (auto& x : e_) out[x.row].emplace_back(static_cast<uint32_t>(x.col), x.val);
  return out;
}

SparseVec RatMatrix::apply(const SparseVec& v) const {
  std::map<uint32_t, Rat> acc;
  std::vector<std::vector<std::pair<uint32_t, const Rat*>>> bycol(cols_);
  for (auto& x : e_) bycol[x.col].emplace_back(static_cast<uint32_t>(x.row), &x.val);
  for (auto& [c, a] : v) {
    if (c >= cols_) throw std::out_of_range("RatMatrix::apply: vector too long");
    for (auto& [r, p] : bycol[c]) acc[r] += a * *p;
  }
  SparseVec out;
  for (auto& [r, a] : acc)
    if (a != 0) out.emplace_back(r, a);
  return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: product dimension mismatch");
  auto orows = o.row_vectors();
  std::map<std::pair<size_t, size_t>, Rat> acc;
  for (auto& x : e_)
    for (auto& [c, y] : orows[x.col]) acc[{x.row, c}] += x.val * y;
  std::vector<Entry> e;
  for (auto& [k, v] : acc)
    if (v != 0) e.push_back({k.first, k.second, v});
  return from_entries(rows_, o.cols_, std::move(e));
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMatrix: sum dimension mismatch");
  std::vector<Entry> e = e_;
  e.insert(e.end(), o.e_.begin(), o.e_.end());
  return from_entries(rows_, cols_, std::move(e));
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const { return *this + o.scaled(Rat(-1)); }

RatMatrix RatMatrix::scaled(const Rat& s) const {
  std::vector<Entry> e;
  if (s != 0)
    for (auto& x : e_) e.push_back({x.row, x.col, x.val * s});
  return from_entries(rows_, cols_, std::move(e));
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || e_.size() != o.e_.size()) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i].row != o.e_[i].row || e_[i].col != o.e_[i].col || e_[i].val != o.e_[i].val) return false;
  return true;
}

std::string RatMatrix::to_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << "\n";
  for (auto& x : e_) os << "(" << x.row << "," << x.col << ") " << x.val.get_str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------- vectors

void axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
  if (a == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i]));
      ++i;
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      Rat t = y[i].second + a * x[j].second;
      if (t != 0) out.emplace_back(y[i].first, std::move(t));
      ++i;
      ++j;
    }
  }
  y.swap(out);
}

SparseVec scaled(const SparseVec& x, const Rat& a) {
  SparseVec out;
  if (a == 0) return out;
  out.reserve(x.size());
  for (auto& [i, v] : x) out.emplace_back(i, v * a);
  return out;
}

bool is_zero(const SparseVec& x) { return x.empty(); }

// ---------------------------------------------------------------- IntEchelon

bool IntEchelon::add(IntVec row) {
  make_primitive(row);
  while (!row.empty()) {
    auto it = piv_.find(row.front().first);
    if (it == piv_.end()) {
      uint32_t lead = row.front().first;
      piv_.emplace(lead, std::move(row));
      return true;
    }
    const IntVec& p = it->second;
    Int g;
    mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
    Int a = p.front().second / g, b = row.front().second / g;
    row = comb(a, row, b, p);
    make_primitive(row);
  }
  return false;
}

bool IntEchelon::add(const SparseVec& row) { return add(to_int_row(row)); }

// ---------------------------------------------------------------- RatEchelon

void RatEchelon::reduce(SparseVec& v, SparseVec* coeff) const {
  if (rows_.empty()) return;
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rat a = v[pos].second;   // pivot rows are monic
    if (coeff) axpy(*coeff, a, it->second.second);
    axpy(v, -a, it->second.first);
    // entries before pos are untouched since the row starts at this pivot
  }
}

bool RatEchelon::add(SparseVec v, SparseVec tag) {
  SparseVec used;
  reduce(v, tag.empty() ? nullptr : &used);
  if (v.empty()) return false;
  if (!tag.empty()) axpy(tag, Rat(-1), used);
  Rat inv = 1 / v.front().second;
  if (inv != 1) {
    for (auto& [i, x] : v) x *= inv;
    for (auto& [i, x] : tag) x *= inv;
  }
  uint32_t lead = v.front().first;
  rows_.emplace(lead, std::make_pair(std::move(v), std::move(tag)));
  return true;
}

// ---------------------------------------------------------------- ranks, kernels

size_t rank_of_rows(const std::vector<SparseVec>& rows) {
  std::vector<const SparseVec*> order;
  for (auto& r : rows)
    if (!r.empty()) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const SparseVec* a, const SparseVec* b) { return a->size() < b->size(); });
  IntEchelon e;
  for (auto* r : order) e.add(*r);
  return e.rank();
}

size_t rank(const RatMatrix& m) {
  // eliminate along the shorter side
  if (m.rows() <= m.cols()) return rank_of_rows(m.row_vectors());
  return rank_of_rows(m.transpose().row_vectors());
}

namespace {

// Fully reduced row echelon form: every pivot column is zero in the other rows.
std::map<uint32_t, SparseVec> reduced_rows(const RatEchelon& e) {
  std::map<uint32_t, SparseVec> red;
  for (auto it = e.rows().rbegin(); it != e.rows().rend(); ++it) {
    SparseVec row = it->second.first;
    size_t pos = 1;
    while (pos < row.size()) {
      auto f = red.find(row[pos].first);
      if (f == red.end()) {
        ++pos;
        continue;
      }
      Rat a = row[pos].second;
      axpy(row, -a, f->second);
    }
    red.emplace(it->first, std::move(row));
  }
  return red;
}

Rat entry(const SparseVec& row, uint32_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Rat(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return (it != row.end() && it->first == c) ? it->second : Rat(0);
}

std::vector<SparseVec> free_kernel(const std::map<uint32_t, SparseVec>& red, size_t ncols) {
  std::vector<SparseVec> out;
  for (uint32_t c = 0; c < ncols; ++c) {
    if (red.count(c)) continue;
    std::map<uint32_t, Rat> v;
    v[c] = 1;
    for (auto& [p, row] : red) {
      Rat x = entry(row, c);
      if (x != 0) v[p] = -x;
    }
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

}  // namespace

std::vector<SparseVec> kernel_basis(const RatMatrix& m) {
  RatEchelon e;
  for (auto& r : m.row_vectors()) e.add(r);
  return free_kernel(reduced_rows(e), m.cols());
}

LinearSolution solve_linear(const std::vector<SparseVec>& rows, const std::vector<Rat>& rhs, size_t nvars) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("solve_linear: rhs size mismatch");
  RatEchelon e;
  auto n = static_cast<uint32_t>(nvars);
  for (size_t i = 0; i < rows.size(); ++i) {
    SparseVec r = rows[i];
    if (!r.empty() && r.back().first >= n) throw std::out_of_range("solve_linear: variable index");
    if (rhs[i] != 0) r.emplace_back(n, rhs[i]);
    e.add(std::move(r));
  }
  LinearSolution s;
  s.particular.assign(nvars, Rat(0));
  s.determined.assign(nvars, false);
  if (e.has_pivot(n)) {
    s.consistent = false;
    return s;
  }
  auto red = reduced_rows(e);
  for (auto& [p, row] : red) {
    s.particular[p] = entry(row, n);
    s.determined[p] = row.size() == 1 || (row.size() == 2 && row[1].first == n);
  }
  s.kernel = free_kernel(red, nvars);
  return s;
}

std::vector<SparseVec> image_basis(const RatMatrix& m) {
  RatEchelon e;
  for (auto& c : m.transpose().row_vectors()) e.add(c);
  std::vector<SparseVec> out;
  for (auto& [p, rt] : e.rows()) out.push_back(rt.first);
  return out;
}

HomologyInfo homology_dim(const RatMatrix& d_in, const RatMatrix& d_out, bool want_kernel) {
  if (d_in.rows() != d_out.cols())
    throw std::invalid_argument("homology_dim: d_in target dimension " + std::to_string(d_in.rows()) +
                                " differs from d_out source dimension " + std::to_string(d_out.cols()));
  if (!(d_out * d_in).is_zero()) throw std::invalid_argument("homology_dim: d_out * d_in is not zero");
  HomologyInfo h;
  h.rank_in = rank(d_in);
  h.rank_out = rank(d_out);
  h.kernel_dim = d_out.cols() - h.rank_out;
  h.dim = h.kernel_dim - h.rank_in;
  if (want_kernel) h.kernel = kernel_basis(d_out);
  return h;
}

// ---------------------------------------------------------------- Quotient

Quotient::Quotient(const std::vector<SparseVec>& boundaries, const std::vector<SparseVec>& cycles) {
  for (auto& b : boundaries) {
    ech_.add(b);
    bech_.add(b);
  }
  for (auto& z : cycles) {
    SparseVec r = z;
    ech_.reduce(r);
    if (r.empty()) continue;
    SparseVec tag{{static_cast<uint32_t>(reps_.size()), Rat(1)}};
    reps_.push_back(r);
    ech_.add(std::move(r), std::move(tag));
  }
}

SparseVec Quotient::coords(SparseVec z) const {
  SparseVec c;
  ech_.reduce(z, &c);
  if (!z.empty()) throw std::logic_error("Quotient::coords: vector is not a cycle");
  return c;
}

bool Quotient::in_boundaries(SparseVec z) const {
  bech_.reduce(z);
  return z.empty();
}

}  // namespace trihom
