#include "qcc/circulant.hpp"

#include "qcc/involution.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qcc {

namespace {

int bracket(long k, int n) { return static_cast<int>(((k - 1) % n + n) % n) + 1; }

void add_to(LinearForm& f, int idx, const Integer& c) {
  if (c == 0) return;
  auto [it, ins] = f.try_emplace(idx, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) f.erase(it);
  }
}

Integer det3(const Integer m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

std::vector<Integer> recurrence_values(int count) {
  std::vector<Integer> a{1, 0, -1};
  while (static_cast<int>(a.size()) < count) {
    const std::size_t k = a.size() - 3;
    a.push_back(-a[k] - a[k + 1]);
  }
  a.resize(static_cast<std::size_t>(std::max(count, 0)));
  return a;
}

Integer recurrence(int k) {
  if (k < 1) throw std::invalid_argument("recurrence: k must be >= 1");
  return recurrence_values(k).back();
}

std::vector<Integer> root_power_sums(int count) {
  // Newton's identities with e1 = 0, e2 = 1, e3 = -1.
  std::vector<Integer> p{3, 0, -2};
  while (static_cast<int>(p.size()) < count) {
    const std::size_t k = p.size();
    p.push_back(-p[k - 2] - p[k - 3]);
  }
  p.resize(static_cast<std::size_t>(std::max(count, 0)));
  return p;
}

Rational RecurrenceClosedForm::value(const std::vector<Integer>& p, int k) const {
  const auto at = [&p](int j) { return Rational(p.at(static_cast<std::size_t>(j))); };
  return alpha * at(k) + beta * at(k + 1) + gamma * at(k + 2);
}

RecurrenceClosedForm recurrence_closed_form() {
  const auto p = root_power_sums(8);
  const auto a = recurrence_values(3);
  // Rows k = 1..3: p_k alpha + p_{k+1} beta + p_{k+2} gamma = a_k (Cramer).
  Integer m[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = p[static_cast<std::size_t>(r + 1 + c)];
  const Integer d = det3(m);
  Rational sol[3];
  for (int c = 0; c < 3; ++c) {
    Integer mc[3][3];
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) mc[r][k] = k == c ? a[static_cast<std::size_t>(r)] : m[r][k];
    sol[c] = Rational(det3(mc), d);
  }
  return {sol[0], sol[1], sol[2]};
}

LinearForm circulant_row(int n, long k) {
  LinearForm f;
  for (long off : {0L, 4L, 6L}) add_to(f, bracket(k + off, n), 1);
  return f;
}

TelescopingResult telescoping_check(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("telescoping_check: n and m must be >= 1");
  const auto a = recurrence_values(m + 2);
  const auto A = [&a](int k) { return a[static_cast<std::size_t>(k - 1)]; };
  TelescopingResult res;
  res.n = n;
  res.m = m;
  bool* slots[3] = {&res.identity_odd, &res.identity_plus1, &res.identity_plus3};
  for (int s = 0; s < 3; ++s) {
    const long shift = 2L * s;
    LinearForm lhs;
    for (int k = 1; k <= m; ++k)
      for (const auto& [idx, c] : circulant_row(n, 2L * k - 1 + shift)) add_to(lhs, idx, A(k) * c);
    LinearForm rhs;
    const long pos[4] = {1 + shift, 2L * m + 1 + shift, 2L * m + 3 + shift, 2L * m + 5 + shift};
    add_to(rhs, bracket(pos[0], n), 1);
    add_to(rhs, bracket(pos[1], n), -A(m + 1));
    add_to(rhs, bracket(pos[2], n), -A(m + 2));
    add_to(rhs, bracket(pos[3], n), A(m));
    *slots[s] = lhs == rhs;
    std::set<int> distinct;
    for (long p : pos) distinct.insert(bracket(p, n));
    if (distinct.size() < 4) res.collapsed = true;
  }
  if (circulant_row(n, 1).size() < 3) res.collapsed = true;
  return res;
}

bool Nondegeneracy::passed() const {
  return full_rank && gcd_degree == 0 && resultant != 0 && root_product != 0 &&
         root_product == root_product_resultant && det_product == abs(resultant);
}

Nondegeneracy nondegeneracy(int n) {
  if (n < 1) throw std::invalid_argument("nondegeneracy: n must be >= 1");
  Nondegeneracy r;
  r.n = n;
  std::vector<SparseRow> rows;
  for (int k = 1; k <= n; ++k) {
    SparseRow row;
    for (const auto& [idx, c] : circulant_row(n, k)) row.emplace_back(static_cast<std::size_t>(idx - 1), Rational(c));
    rows.push_back(std::move(row));
  }
  r.rank = exact_rank(rows);
  r.full_rank = r.rank == static_cast<std::size_t>(n);

  const UniPoly zn1 = UniPoly::monomial(1, n) - UniPoly::monomial(1, 0);
  const UniPoly q = UniPoly(std::vector<Integer>{1, 0, 0, 0, 1, 0, 1});
  r.gcd_degree = poly_gcd(zn1, q).degree();
  r.resultant = resultant(zn1, q);
  r.det_product = abs(r.resultant);

  const auto p = root_power_sums(2 * n + 1);
  const Integer& pn = p[static_cast<std::size_t>(n)];
  const Integer& p2n = p[static_cast<std::size_t>(2 * n)];
  // prod (w_i - 1) = e3(w) - e2(w) + e1(w) - 1 with w_i = z_i^n.
  const Integer e3 = (n % 2 == 0) ? Integer(1) : Integer(-1);
  const Integer e2 = (pn * pn - p2n) / 2;
  r.root_product = e3 - e2 + pn - 1;
  r.root_product_resultant = resultant(UniPoly(std::vector<Integer>{1, 1, 0, 1}), zn1);
  return r;
}

Det3Result det3_check(int n) {
  if (n < 3) throw std::invalid_argument("det3_check: n must be >= 3");
  const auto a = recurrence_values(n + 2);
  const auto A = [&a](int k) { return a[static_cast<std::size_t>(k - 1)]; };
  Det3Result r;
  r.n = n;
  const Integer an = A(n), am1 = A(n - 1), ap1 = A(n + 1), am2 = A(n - 2), ap2 = A(n + 2);

  const Integer printed[3][3] = {{1 - ap1, -ap2, -an}, {-an, 1 - ap1, -am1}, {-am1, -an, 1 + am2}};
  r.printed_det = det3(printed);

  // Rows from the three identities at m = n, n - 1, n - 2.
  Integer derived[3][3];
  for (int s = 0; s < 3; ++s) {
    const int m = n - s;
    // x_{1+2s}, x_[2m+1+2s], x_[2m+3+2s], x_[2m+5+2s] with 2m + 2s = 2n.
    Integer row[3] = {0, 0, 0};
    row[s] += 1;
    row[0] -= A(m + 1);
    row[1] -= A(m + 2);
    row[2] += A(m);
    for (int c = 0; c < 3; ++c) derived[s][c] = row[c];
  }
  r.derived_det = det3(derived);

  r.printed_expansion = an * an * an - 2 * an * am1 * ap1 - an * am2 * ap2 + am1 * am1 * ap2 + am2 * ap1 * ap1 +
                        2 * an * am1 - an * ap2 - 2 * am2 * ap1 + ap1 * ap1 + am2 - 2 * ap1 + 1;
  r.root_product = nondegeneracy(n).root_product;
  r.literal_equal = r.printed_det == r.root_product;
  r.expansion_is_derived_det = r.printed_expansion == r.derived_det;
  r.derived_is_minus_product = r.derived_det == -r.root_product;
  r.nonvanishing = r.derived_det != 0 && r.root_product != 0;
  return r;
}

}  // namespace qcc
