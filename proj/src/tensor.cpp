#include "qcc/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcc {

IndexSpec::IndexSpec(int rank) : n(rank) {
  if (rank < 1) throw std::invalid_argument("IndexSpec: n must be >= 1");
}

int IndexSpec::primed(int a) const {
  if (a < 0 || a >= n) throw std::out_of_range("IndexSpec::primed: index must be in 0..n-1");
  return a + n;
}

int IndexSpec::pi(int a, int b) const {
  if (a < n && b == a + n) return 1;
  if (a >= n && b == a - n) return -1;
  return 0;
}

long IndexSpec::bracket(long k, long n) {
  if (n < 1) throw std::invalid_argument("bracket: n must be >= 1");
  const long r = ((k % n) + n) % n;
  return r == 0 ? n : r;
}

MultiIndex canonical(MultiIndex idx) {
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<MultiIndex> multisets(int m, int k) {
  std::vector<MultiIndex> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  if (m <= 0) return out;
  MultiIndex cur(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == m - 1) --pos;
    if (pos < 0) break;
    const int v = cur[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < k; ++q) cur[static_cast<std::size_t>(q)] = v;
  }
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

IndexedArray::IndexedArray(const IndexSpec& spec, std::vector<bool> barred)
    : spec_(spec), barred_(std::move(barred)) {
  std::size_t size = 1;
  for (std::size_t k = 0; k < barred_.size(); ++k) size *= static_cast<std::size_t>(spec_.dim());
  data_.assign(size, GaussianRational());
}

std::size_t IndexedArray::offset(const std::vector<int>& idx) const {
  if (idx.size() != barred_.size()) throw std::invalid_argument("IndexedArray: arity mismatch");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= spec_.dim()) throw std::out_of_range("IndexedArray: index out of range");
    off = off * static_cast<std::size_t>(spec_.dim()) + static_cast<std::size_t>(i);
  }
  return off;
}

std::vector<int> IndexedArray::unflatten(std::size_t k) const {
  std::vector<int> idx(barred_.size());
  for (std::size_t s = barred_.size(); s-- > 0;) {
    idx[s] = static_cast<int>(k % static_cast<std::size_t>(spec_.dim()));
    k /= static_cast<std::size_t>(spec_.dim());
  }
  return idx;
}

bool IndexedArray::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& z) { return z.is_zero(); });
}

bool IndexedArray::is_symmetric() const {
  for (std::size_t k = 0; k < data_.size(); ++k) {
    auto idx = unflatten(k);
    std::sort(idx.begin(), idx.end());
    if (!(data_[k] == at(idx))) return false;
  }
  return true;
}

bool operator==(const IndexedArray& a, const IndexedArray& b) {
  return a.spec_.n == b.spec_.n && a.barred_ == b.barred_ && a.data_ == b.data_;
}

IndexedArray j_apply(const IndexedArray& t) {
  // pi is a signed permutation, so the sum has a single term per component.
  const IndexSpec& s = t.spec();
  IndexedArray out(s, t.barred());
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto idx = out.unflatten(k);
    int sign = 1;
    for (int& i : idx) {
      sign *= s.sign(i);
      i = s.partner(i);
    }
    GaussianRational v = t.at(idx).conj();
    out.flat(k) = sign > 0 ? v : -v;
  }
  return out;
}

SymArray::SymArray(const IndexSpec& spec, std::string tag, int arity, Constraint c)
    : spec_(spec), tag_(std::move(tag)), arity_(arity), constraint_(c) {
  if (arity < 0) throw std::invalid_argument("SymArray: negative arity");
  if (c == Constraint::real && arity != 0)
    throw std::invalid_argument("SymArray: real constraint applies to scalars");
}

GaussianRational SymArray::get(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != arity_) throw std::invalid_argument("SymArray: arity mismatch");
  auto it = comps_.find(canonical(idx));
  return it == comps_.end() ? GaussianRational() : it->second;
}

void SymArray::set(const std::vector<int>& idx, const GaussianRational& v) {
  if (static_cast<int>(idx.size()) != arity_) throw std::invalid_argument("SymArray: arity mismatch");
  for (int i : idx)
    if (i < 0 || i >= spec_.dim()) throw std::out_of_range("SymArray: index out of range");
  auto key = canonical(idx);
  if (v.is_zero()) comps_.erase(key);
  else comps_[key] = v;
}

SymArray SymArray::from_dense(const IndexedArray& a, std::string tag, Constraint c) {
  if (!a.is_symmetric()) throw std::invalid_argument("SymArray: array '" + tag + "' is not totally symmetric");
  SymArray out(a.spec(), std::move(tag), a.arity(), c);
  for (const auto& m : multisets(a.spec().dim(), a.arity())) out.set(m, a.at(m));
  return out;
}

IndexedArray SymArray::to_dense() const {
  IndexedArray out(spec_, std::vector<bool>(static_cast<std::size_t>(arity_), false));
  for (std::size_t k = 0; k < out.size(); ++k) out.flat(k) = get(out.unflatten(k));
  return out;
}

SymArray SymArray::j() const {
  SymArray out(spec_, tag_, arity_, constraint_);
  for (const auto& m : multisets(spec_.dim(), arity_)) {
    MultiIndex p = m;
    int sign = 1;
    for (int& i : p) {
      sign *= spec_.sign(i);
      i = spec_.partner(i);
    }
    const GaussianRational v = get(p).conj();
    out.set(m, sign > 0 ? v : -v);
  }
  return out;
}

bool SymArray::satisfies_constraint() const {
  switch (constraint_) {
    case Constraint::none:
      return true;
    case Constraint::real:
      return get({}).is_real();
    case Constraint::j_real: {
      const SymArray jt = j();
      return jt.comps_ == comps_;
    }
  }
  return false;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  const long p = num(rng);
  const long q = den(rng);
  return Rational(p, q);
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  Rational re = random_rational(rng);
  Rational im = random_rational(rng);
  return {re, im};
}

SymArray SymArray::random(const IndexSpec& spec, std::string tag, int arity, Constraint c,
                          std::mt19937_64& rng) {
  if (c == Constraint::j_real && arity % 2 != 0)
    throw std::invalid_argument("SymArray::random: odd-arity j-real arrays vanish");
  SymArray out(spec, std::move(tag), arity, c);
  for (const auto& m : multisets(spec.dim(), arity)) {
    if (c == Constraint::real) {
      out.set(m, GaussianRational(random_rational(rng)));
      continue;
    }
    if (c == Constraint::none) {
      out.set(m, random_gaussian(rng));
      continue;
    }
    MultiIndex p = m;
    int sign = 1;
    for (int& i : p) {
      sign *= spec.sign(i);
      i = spec.partner(i);
    }
    p = canonical(p);
    if (p < m) continue;  // already fixed by its partner
    // T_m = sign * conj(T_p).
    if (p == m) {
      const Rational r = random_rational(rng);
      out.set(m, sign > 0 ? GaussianRational(r) : GaussianRational(Rational(0), r));
    } else {
      const GaussianRational z = random_gaussian(rng);
      out.set(m, z);
      out.set(p, sign > 0 ? z.conj() : -z.conj());
    }
  }
  return out;
}

namespace {

std::string label(int a, int b) { return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"; }

}  // namespace

SpVerdict sp_membership(const IndexedArray& x) {
  if (x.arity() != 2 || x.barred() != std::vector<bool>{false, true})
    throw std::invalid_argument("sp_membership: expected X with slots (alpha, betabar)");
  const IndexSpec& s = x.spec();
  const int m = s.dim();
  SpVerdict v;
  // Condition (2): X_{a bbar} = -X_{bbar a} = -conj X_{b abar}, and jX = X.
  v.condition2 = true;
  const IndexedArray jx = j_apply(x);
  for (int a = 0; a < m && v.condition2; ++a)
    for (int b = 0; b < m; ++b) {
      if (!(x.at({a, b}) == -x.at({b, a}).conj())) {
        v.condition2 = false;
        v.witness = "X" + label(a, b) + " != -conj X" + label(b, a);
        break;
      }
      if (!(jx.at({a, b}) == x.at({a, b}))) {
        v.condition2 = false;
        v.witness = "(jX)" + label(a, b) + " != X" + label(a, b);
        break;
      }
    }
  // Condition (3): Y_{sb} = -pi_{st} X^t_b with X^t_b = X_{b tbar}.
  IndexedArray y(s, {false, false});
  for (int sg = 0; sg < m; ++sg)
    for (int b = 0; b < m; ++b) {
      GaussianRational acc;
      for (int t = 0; t < m; ++t)
        if (const int p = s.pi(sg, t)) acc -= GaussianRational(p) * x.at({b, t});
      y.at({sg, b}) = acc;
    }
  v.condition3 = y.is_symmetric() && j_apply(y) == y;
  if (!v.condition3 && v.witness.empty()) v.witness = "Y = -pi X is not symmetric and j-real";
  return v;
}

IndexedArray sp_from_symmetric(const IndexedArray& y) {
  if (y.arity() != 2) throw std::invalid_argument("sp_from_symmetric: expected a two-tensor");
  const IndexSpec& s = y.spec();
  IndexedArray x(s, {false, true});
  // X_{b abar} = X^a_b = pi^{a s} Y_{s b}.
  for (int a = 0; a < s.dim(); ++a)
    for (int b = 0; b < s.dim(); ++b) {
      GaussianRational acc;
      for (int sg = 0; sg < s.dim(); ++sg)
        if (const int p = s.pi(a, sg)) acc += GaussianRational(p) * y.at({sg, b});
      x.at({b, a}) = acc;
    }
  return x;
}

bool sp_group_membership(const IndexedArray& u) {
  if (u.arity() != 2) throw std::invalid_argument("sp_group_membership: expected a two-tensor");
  const IndexSpec& s = u.spec();
  const int m = s.dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      GaussianRational metric;
      GaussianRational symp;
      for (int sg = 0; sg < m; ++sg) {
        metric += u.at({a, sg}) * u.at({b, sg}).conj();
        for (int t = 0; t < m; ++t)
          if (const int p = s.pi(sg, t)) symp += GaussianRational(p) * u.at({a, sg}) * u.at({b, t});
      }
      if (!(metric == GaussianRational(s.g(a, b)))) return false;
      if (!(symp == GaussianRational(s.pi(a, b)))) return false;
    }
  return true;
}

long long constrained_dimension(int n, const FamilyDescriptor& f) {
  const long long comps = binomial(2LL * n + f.arity - 1, f.arity);
  const long long per = f.constraint == Constraint::none ? 2 * comps : comps;
  return per * f.multiplicity;
}

const std::vector<FamilyDescriptor>& curvature_families() {
  static const std::vector<FamilyDescriptor> fams = {
      {"S", 4, Constraint::j_real, 1}, {"V", 3, Constraint::none, 1},
      {"L", 2, Constraint::j_real, 1}, {"M", 2, Constraint::none, 1},
      {"C", 1, Constraint::none, 1},   {"H", 1, Constraint::none, 1},
      {"P", 0, Constraint::none, 1},   {"Q", 0, Constraint::none, 1},
      {"R", 0, Constraint::real, 1},
  };
  return fams;
}

const std::vector<FamilyDescriptor>& second_order_families() {
  static const std::vector<FamilyDescriptor> fams = {
      {"A", 5, Constraint::none, 1},  {"B", 4, Constraint::none, 1},  {"C", 4, Constraint::none, 1},
      {"D", 3, Constraint::none, 1},  {"E", 3, Constraint::none, 1},  {"F", 3, Constraint::none, 1},
      {"G", 2, Constraint::none, 1},  {"X", 2, Constraint::none, 1},  {"Y", 2, Constraint::none, 1},
      {"Z", 2, Constraint::none, 1},  {"N1", 1, Constraint::none, 1}, {"N2", 1, Constraint::none, 1},
      {"N3", 1, Constraint::none, 1}, {"N4", 1, Constraint::none, 1}, {"N5", 1, Constraint::none, 1},
      {"U", 0, Constraint::none, 3},  {"W", 0, Constraint::none, 3},
  };
  return fams;
}

}  // namespace qcc
