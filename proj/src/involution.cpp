#include "qcc/involution.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace qcc {

namespace {

// a - f * b for sparse rows.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void push(std::vector<SparseRow>& rows, const std::map<std::size_t, Rational>& r) {
  if (r.empty()) return;
  rows.emplace_back(r.begin(), r.end());
}

// Real and imaginary rows of a complex vector over real coordinates.
void push_re_im(std::vector<SparseRow>& rows, const std::map<std::size_t, GaussianRational>& v) {
  std::map<std::size_t, Rational> re;
  std::map<std::size_t, Rational> im;
  for (const auto& [k, z] : v) {
    if (!z.re().is_zero()) re.emplace(k, z.re());
    if (!z.im().is_zero()) im.emplace(k, z.im());
  }
  push(rows, re);
  push(rows, im);
}

}  // namespace

bool RowSpace::add(SparseRow row) {
  while (!row.empty()) {
    const std::size_t lead = row.front().first;
    auto it = pivots_.find(lead);
    if (it == pivots_.end()) {
      const Rational inv = row.front().second.inverse();
      for (auto& [k, v] : row) v *= inv;
      pivots_.emplace(lead, std::move(row));
      return true;
    }
    const Rational f = row.front().second;
    row = axpy(row, f, it->second);
  }
  return false;
}

std::size_t exact_rank(const std::vector<SparseRow>& rows) {
  RowSpace s;
  for (const auto& r : rows) s.add(r);
  return s.rank();
}

std::size_t exact_rank(const std::vector<std::vector<Rational>>& dense) {
  std::vector<SparseRow> rows;
  for (const auto& d : dense) {
    SparseRow r;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (!d[k].is_zero()) r.emplace_back(k, d[k]);
    rows.push_back(std::move(r));
  }
  return exact_rank(rows);
}

RealTableau real_tableau(const QcSystem& sys, const BianchiSet& epsilon_forms) {
  const RealCoordinates coords(sys);
  RealTableau t;
  t.columns = coords.size();
  t.base = sys.epsilon().size();
  const auto is_unknown = [&sys](GenId g) { return sys.is_starred(g); };
  for (const auto& f : epsilon_forms.forms) {
    const Tableau tab = tableau_extract(f.form, is_unknown, sys.epsilon());
    if (!tab.outside.empty()) throw std::logic_error("real_tableau: terms outside the epsilon base in " + f.name);
    std::map<std::pair<int, int>, std::map<std::size_t, GaussianRational>> pis;
    for (const auto& [bc, vec] : tab.pi) {
      auto r = coords.realify(vec);
      if (r.empty()) continue;
      push_re_im(t.rows[bc], r);
      pis.emplace(bc, std::move(r));
    }
    t.complex_pi.push_back(std::move(pis));
  }
  return t;
}

namespace {

long long binom(long long a, long long b) { return binomial(a, b); }

}  // namespace

ClosedForms closed_form_counts(int n) {
  if (n < 1) throw std::invalid_argument("closed_form_counts: n must be >= 1");
  ClosedForms c;
  const long long m = n;
  c.n = n;
  c.d1 = d1_formula(n);
  c.d2 = d2_formula(n);
  c.D = 2 * (2 * m + 5) * (2 * m + 3) * (m + 3) * (m + 2) * (m + 1) / 15;
  c.D_binomial = 2 * binom(2 * m + 4, 5) + 4 * binom(2 * m + 3, 4) + 6 * binom(2 * m + 2, 3) +
                 8 * binom(2 * m + 1, 2) + 10 * (2 * m) + 12;
  c.dim_F_n = m * (m - 1) * (11 * m * m + 61 * m + 86) / 24;
  c.v.assign(static_cast<std::size_t>(c.d1), 0);
  for (long long l = 1; l <= m; ++l) {
    c.v[static_cast<std::size_t>(l - 1)] = (l - 1) * (l - 2 * m - 4) * (l - 2 * m - 5) / 2;
    c.v[static_cast<std::size_t>(m + l - 1)] = (m + l - 1) * (m - l + 4) * (m - l + 5) / 2;
  }
  c.v[static_cast<std::size_t>(2 * m)] = 12 * m;
  c.v[static_cast<std::size_t>(2 * m + 1)] = 6 * m + 3;
  c.v[static_cast<std::size_t>(2 * m + 2)] = 2 * m + 2;
  return c;
}

NullityResult solution_space_nullity(const RealTableau& t) {
  const std::size_t base = t.base;
  NullityResult res;
  res.unknowns = t.columns * base;
  RowSpace space;
  const auto col = [base](std::size_t k, std::size_t d) { return k * base + d; };
  for (const auto& pis : t.complex_pi) {
    const auto get = [&pis](std::size_t b, std::size_t c) -> const std::map<std::size_t, GaussianRational>* {
      auto it = pis.find({static_cast<int>(b), static_cast<int>(c)});
      return it == pis.end() ? nullptr : &it->second;
    };
    for (std::size_t a = 0; a < base; ++a)
      for (std::size_t b = a + 1; b < base; ++b)
        for (std::size_t c = b + 1; c < base; ++c) {
          std::map<std::size_t, GaussianRational> eq;
          const auto acc = [&](const std::map<std::size_t, GaussianRational>* w, std::size_t d, int sign) {
            if (!w) return;
            for (const auto& [k, z] : *w) {
              auto [it, ins] = eq.try_emplace(col(k, d), sign > 0 ? z : -z);
              if (!ins) it->second += sign > 0 ? z : -z;
            }
          };
          acc(get(b, c), a, 1);
          acc(get(a, c), b, -1);
          acc(get(a, b), c, 1);
          std::vector<SparseRow> rows;
          std::map<std::size_t, GaussianRational> clean;
          for (auto& [k, z] : eq)
            if (!z.is_zero()) clean.emplace(k, z);
          push_re_im(rows, clean);
          for (auto& r : rows) space.add(std::move(r));
        }
  }
  res.rank = space.rank();
  res.nullity = res.unknowns - res.rank;
  return res;
}

namespace {

// dim F_lambda for lambda = 1..base from scratch, lambda distributed over jobs.
std::vector<long long> scratch_ranks(const RealTableau& t, unsigned jobs) {
  std::vector<long long> out(t.base, 0);
  std::atomic<std::size_t> next{1};
  auto worker = [&]() {
    for (std::size_t l = next++; l <= t.base; l = next++) {
      RowSpace s;
      for (const auto& [bc, rows] : t.rows)
        if (static_cast<std::size_t>(bc.second) < l)
          for (const auto& r : rows) s.add(r);
      out[l - 1] = static_cast<long long>(s.rank());
    }
  };
  const unsigned n = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

CharacterReport characters(const QcSystem& sys, const CharacterOptions& opt) {
  const BianchiSet eps = sys.to_epsilon_basis(sys.bianchi_forms());
  const RealTableau t = real_tableau(sys, eps);
  const ClosedForms cf = closed_form_counts(sys.n());

  CharacterReport r;
  r.n = sys.n();
  r.d1 = static_cast<long long>(sys.coframe_size());
  r.d2 = static_cast<long long>(t.columns);
  r.D_closed = cf.D;

  // Incremental: pairs ordered by their larger index c.
  std::vector<std::map<std::pair<int, int>, std::vector<SparseRow>>::const_iterator> order;
  for (auto it = t.rows.begin(); it != t.rows.end(); ++it) order.push_back(it);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a->first.second < b->first.second; });
  RowSpace s;
  std::size_t pos = 0;
  r.filtration.assign(static_cast<std::size_t>(r.d1), 0);
  for (std::size_t l = 1; l <= static_cast<std::size_t>(r.d1); ++l) {
    while (pos < order.size() && static_cast<std::size_t>(order[pos]->first.second) < l) {
      for (const auto& row : order[pos]->second) s.add(row);
      ++pos;
    }
    r.filtration[l - 1] = static_cast<long long>(s.rank());
  }
  if (opt.verify_from_scratch) {
    const auto scratch = scratch_ranks(t, opt.jobs);
    for (std::size_t l = 0; l < scratch.size(); ++l)
      if (scratch[l] != r.filtration[l]) r.scratch_agrees = false;
  }
  r.v.assign(r.filtration.size(), 0);
  for (std::size_t l = 0; l < r.filtration.size(); ++l)
    r.v[l] = r.filtration[l] - (l ? r.filtration[l - 1] : 0);
  r.dim_F_n = r.filtration[static_cast<std::size_t>(sys.n() - 1)];

  if (opt.compute_nullity) {
    const NullityResult nr = solution_space_nullity(t);
    r.D_nullity = static_cast<long long>(nr.nullity);
    r.nullity_rank = static_cast<long long>(nr.rank);
    r.nullity_unknowns = static_cast<long long>(nr.unknowns);
  }
  const CartanVerdict cv = cartan_test(r);
  r.cartan_sum = cv.sum;
  r.involutive = cv.involutive;
  return r;
}

CartanVerdict cartan_test(const CharacterReport& r) {
  CartanVerdict v;
  for (std::size_t l = 0; l < r.v.size(); ++l) {
    const long long c = static_cast<long long>(l + 1) * r.v[l];
    v.contributions.push_back(c);
    v.sum += c;
  }
  const bool nullity_ok = r.D_nullity < 0 || r.D_nullity == r.D_closed;
  v.involutive = nullity_ok && v.sum == r.D_closed;
  return v;
}

}  // namespace qcc
