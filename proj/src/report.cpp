#include "qcc/report.hpp"

#include "qcc/circulant.hpp"
#include "qcc/involution.hpp"
#include "qcc/qc_system.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <sstream>
#include <thread>

namespace qcc {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.status == Status::fail) return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = kSchema;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  Json cfg;
  cfg["command"] = config.command;
  if (!config.target.empty()) cfg["target"] = config.target;
  cfg["n"] = config.n_first == config.n_last ? std::to_string(config.n_first)
                                              : std::to_string(config.n_first) + ".." + std::to_string(config.n_last);
  cfg["format"] = config.format;
  cfg["seed"] = config.seed;
  cfg["jobs"] = config.jobs;
  if (config.target == "shift") cfg["samples"] = config.samples;
  j["config"] = cfg;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json r;
    r["id"] = c.id;
    r["equation"] = c.equation;
    r["status"] = to_string(c.status);
    r["witness"] = c.witness;
    if (config.timing) r["elapsed_ms"] = c.elapsed_ms;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  j["status"] = passed() ? "pass" : "fail";
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.id.size());
  for (const auto& c : checks) {
    os << std::left << std::setw(8) << to_string(c.status) << std::setw(static_cast<int>(width) + 2) << c.id
       << c.witness.dump();
    if (config.timing) os << "  (" << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms)";
    os << "\n";
  }
  os << (passed() ? "overall: pass" : "overall: fail") << "\n";
  return os.str();
}

namespace {

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

std::string prefix(int n) { return "n=" + std::to_string(n) + "/"; }

Json big(const Integer& v) { return to_string(v); }

Json to_json(const std::vector<long long>& v) {
  Json a = Json::array();
  for (long long x : v) a.push_back(x);
  return a;
}

// Drops trailing zeros for display; the full length is reported separately.
std::vector<long long> trim(std::vector<long long> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

template <class F>
CheckRecord timed(std::string id, std::string equation, F&& body) {
  CheckRecord r;
  r.id = std::move(id);
  r.equation = std::move(equation);
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

long long family_sum(int n, const std::vector<FamilyDescriptor>& fams) {
  long long s = 0;
  for (const auto& f : fams) s += constrained_dimension(n, f);
  return s;
}

std::vector<CheckRecord> counts_checks(int n) {
  std::vector<CheckRecord> out;
  out.push_back(timed(prefix(n) + "counts", "d1 = C(2n+5,2), d2, D closed forms", [n](CheckRecord& r) {
    const ClosedForms c = closed_form_counts(n);
    const long long d2_fam = family_sum(n, curvature_families());
    const long long D_fam = family_sum(n, second_order_families());
    long long sum_v = 0;
    long long cartan = 0;
    for (std::size_t l = 0; l < c.v.size(); ++l) {
      sum_v += c.v[l];
      cartan += static_cast<long long>(l + 1) * c.v[l];
    }
    const bool ok = c.d1 == (2LL * n + 5) * (n + 2) && c.d2 == d2_fam && c.D == c.D_binomial && c.D == D_fam &&
                    sum_v == c.d2 && cartan == c.D;
    r.status = verdict(ok);
    r.witness = {{"d1", c.d1},         {"d2", c.d2},           {"d2_families", d2_fam},
                 {"D", c.D},           {"D_binomial", c.D_binomial}, {"D_families", D_fam},
                 {"dim_F_n", c.dim_F_n}, {"v", to_json(trim(c.v))}, {"sum_v", sum_v},
                 {"cartan_sum", cartan}};
  }));
  return out;
}

}  // namespace

std::vector<CheckRecord> analyze_checks(int n, const RunConfig& config) {
  std::vector<CheckRecord> out;
  const QcSystem sys = QcSystem::build(n);
  const ClosedForms cf = closed_form_counts(n);

  out.push_back(timed(prefix(n) + "build", "catalog sizes d1, d2", [&](CheckRecord& r) {
    const RealCoordinates coords(sys);
    const bool ok = static_cast<long long>(sys.coframe_size()) == cf.d1 &&
                    static_cast<long long>(coords.size()) == cf.d2;
    r.status = verdict(ok);
    r.witness = {{"d1", sys.coframe_size()}, {"d2", coords.size()}, {"starred_generators", sys.starred_size()}};
  }));

  out.push_back(timed(prefix(n) + "bianchi.j_symmetry", "Delta_I = sign(I) conj(Delta_I')", [&](CheckRecord& r) {
    const bool ok = sys.bianchi_j_symmetric(sys.bianchi_forms());
    r.status = verdict(ok);
    r.witness = {{"holds", ok}};
  }));

  CharacterOptions opt;
  opt.compute_nullity = true;
  opt.verify_from_scratch = true;
  opt.jobs = config.jobs;
  CharacterReport rep;
  out.push_back(timed(prefix(n) + "characters", "v_lambda = dim F_lambda - dim F_{lambda-1}", [&](CheckRecord& r) {
    rep = characters(sys, opt);
    long long sum_v = 0;
    for (long long v : rep.v) sum_v += v;
    const bool ok = rep.v == cf.v && sum_v == rep.d2 && rep.scratch_agrees;
    r.status = verdict(ok);
    r.witness = {{"v", to_json(trim(rep.v))},
                 {"v_length", rep.v.size()},
                 {"closed_form", to_json(trim(cf.v))},
                 {"sum_v", sum_v},
                 {"filtration", to_json(std::vector<long long>(rep.filtration.begin(),
                                                               rep.filtration.begin() + static_cast<long>(sys.epsilon().size())))},
                 {"scratch_agrees", rep.scratch_agrees}};
  }));

  out.push_back(timed(prefix(n) + "filtration.dim_F_n", "dim F_n = n(n-1)(11n^2+61n+86)/24", [&](CheckRecord& r) {
    r.status = verdict(rep.dim_F_n == cf.dim_F_n);
    r.witness = {{"rank", rep.dim_F_n}, {"closed_form", cf.dim_F_n}};
  }));

  out.push_back(timed(prefix(n) + "nullity", "D by nullity = D closed = second-order parameter count", [&](CheckRecord& r) {
    const long long fam = family_sum(n, second_order_families());
    const bool ok = rep.D_nullity == cf.D && cf.D == cf.D_binomial && cf.D == fam &&
                    rep.nullity_rank + rep.D_nullity == rep.nullity_unknowns;
    r.status = verdict(ok);
    r.witness = {{"D_nullity", rep.D_nullity}, {"D_closed", cf.D},          {"D_families", fam},
                 {"unknowns", rep.nullity_unknowns}, {"rank", rep.nullity_rank}};
  }));

  out.push_back(timed(prefix(n) + "cartan_test", "sum lambda v_lambda = D", [&](CheckRecord& r) {
    const CartanVerdict v = cartan_test(rep);
    r.status = verdict(v.involutive && rep.D_nullity == rep.D_closed);
    r.witness = {{"d1", rep.d1},
                 {"d2", rep.d2},
                 {"D_closed", rep.D_closed},
                 {"D_nullity", rep.D_nullity},
                 {"v", to_json(trim(rep.v))},
                 {"contributions", to_json(trim(v.contributions))},
                 {"cartan_sum", v.sum},
                 {"involutive", v.involutive}};
  }));
  return out;
}

namespace {

std::vector<CheckRecord> bianchi_checks(int n, const RunConfig& config) {
  std::vector<CheckRecord> out;
  const QcSystem sys = QcSystem::build(n);
  const BianchiSet b = sys.bianchi_forms();

  out.push_back(timed(prefix(n) + "bianchi.integral_element", "Bianchi forms vanish on the covariant-derivative expansion",
                      [&](CheckRecord& r) {
                        const BianchiSet s = sys.substitute_starred(b, sys.integral_element());
                        std::size_t terms = 0;
                        for (const auto& f : s.forms) terms += f.form.size();
                        r.status = verdict(terms == 0);
                        r.witness = {{"residual_terms", terms}, {"forms", s.forms.size()}};
                      }));

  out.push_back(timed(prefix(n) + "bianchi.integral_element_numeric", "same with seeded random second-order values",
                      [&](CheckRecord& r) {
                        std::mt19937_64 rng(config.seed);
                        const PointConstants c = PointConstants::random(sys.spec(), rng);
                        const BianchiSet s = sys.substitute_starred(b, sys.integral_element(c));
                        std::size_t terms = 0;
                        for (const auto& f : s.forms) terms += f.form.size();
                        r.status = verdict(terms == 0);
                        r.witness = {{"residual_terms", terms}, {"seed", config.seed}};
                      }));

  out.push_back(timed(prefix(n) + "bianchi.j_symmetry", "Delta_I = sign(I) conj(Delta_I')", [&](CheckRecord& r) {
    const bool ok = sys.bianchi_j_symmetric(b);
    r.status = verdict(ok);
    r.witness = {{"holds", ok}};
  }));

  out.push_back(timed(prefix(n) + "bianchi.unknowns", "each conjugation orbit of starred generators occurs, one per term", [&](CheckRecord& r) {
    std::set<GenId> seen;
    bool linear = true;
    for (const auto& f : b.forms)
      for (const auto& [blade, c] : f.form.terms()) {
        int k = 0;
        for (GenId g : blade)
          if (sys.is_starred(g)) {
            ++k;
            seen.insert(g);
          }
        if (k != 1) linear = false;
      }
    // The forms are not closed under conjugation, so a generator counts when it or its conjugate occurs.
    std::size_t missing = 0;
    for (GenId g : sys.starred())
      if (!seen.count(g) && !seen.count(sys.catalog().info(g).conj_id)) ++missing;
    const bool ok = linear && missing == 0;
    r.status = verdict(ok);
    r.witness = {{"starred_seen", seen.size()},
                 {"starred_total", sys.starred_size()},
                 {"orbits_missing", missing},
                 {"linear", linear}};
  }));

  out.push_back(timed(prefix(n) + "bianchi.epsilon_roundtrip", "inverse basis change restores the forms",
                      [&](CheckRecord& r) {
                        const bool ok = sys.from_epsilon_basis(sys.to_epsilon_basis(b)) == b;
                        r.status = verdict(ok);
                        r.witness = {{"holds", ok}};
                      }));
  return out;
}

std::vector<CheckRecord> dsquared_checks(int n) {
  std::vector<CheckRecord> out;
  QcSystem sys = QcSystem::build(n);
  out.push_back(timed(prefix(n) + "dsquared", "d applied to every structure equation", [&](CheckRecord& r) {
    const DSquaredReport rep = sys.verify_d_squared();
    Json residuals = Json::array();
    for (const auto& x : rep.residuals)
      if (x.terms) residuals.push_back({{"equation", x.tag}, {"terms", x.terms}, {"detail", x.detail}});
    r.status = verdict(rep.passed());
    r.witness = {{"equations", rep.residuals.size()},
                 {"nonzero_residuals", rep.nonzero()},
                 {"conjugation_mismatches", rep.conjugation_mismatches},
                 {"residuals", residuals}};
  }));
  out.push_back(timed(prefix(n) + "dsquared.negative_control", "sign flip of 2 phi_b ^ theta^b in d phi_0 is detected",
                      [&](CheckRecord& r) {
                        QcSystem bad = sys;
                        Form rhs = bad.table().of(bad.phi0());
                        for (int b = 0; b < bad.spec().dim(); ++b)
                          rhs += Poly(4) * wedge(Form::generator(bad.phi_lower(b)), Form::generator(bad.theta(b)));
                        bad.override_equation(bad.phi0(), rhs);
                        const DSquaredReport rep = bad.verify_d_squared();
                        std::size_t phi0_terms = 0;
                        for (const auto& x : rep.residuals)
                          if (x.tag == "d phi_0") phi0_terms = x.terms;
                        r.status = verdict(phi0_terms > 0);
                        r.witness = {{"d2_phi0_residual_terms", phi0_terms}, {"nonzero_residuals", rep.nonzero()}};
                      }));
  return out;
}

std::vector<CheckRecord> shift_checks(int n, const RunConfig& config) {
  std::vector<CheckRecord> out;
  const QcSystem sys = QcSystem::build(n);
  const BianchiSet original = sys.bianchi_forms();
  std::mt19937_64 rng(config.seed);
  for (int k = 0; k < config.samples; ++k) {
    const PointConstants c = PointConstants::random(sys.spec(), rng);
    out.push_back(timed(prefix(n) + "shift." + std::to_string(k + 1), "hatted Bianchi forms equal the original",
                        [&](CheckRecord& r) {
                          const BianchiSet s = sys.shifted_system(c);
                          std::size_t differing = 0;
                          for (std::size_t i = 0; i < s.forms.size(); ++i)
                            if (!(s.forms[i].form == original.forms[i].form)) ++differing;
                          r.status = verdict(differing == 0);
                          r.witness = {{"forms", s.forms.size()}, {"differing_forms", differing}};
                        }));
  }
  return out;
}

std::vector<CheckRecord> circulant_checks(int n) {
  std::vector<CheckRecord> out;
  out.push_back(timed(prefix(n) + "circulant.nondegeneracy", "x_[k] + x_[k+4] + x_[k+6] = 0 has only the zero solution",
                      [&](CheckRecord& r) {
                        const Nondegeneracy d = nondegeneracy(n);
                        r.status = verdict(d.passed());
                        r.witness = {{"rank", d.rank},
                                     {"full_rank", d.full_rank},
                                     {"gcd_degree", d.gcd_degree},
                                     {"resultant", big(d.resultant)},
                                     {"det_product", big(d.det_product)},
                                     {"root_product", big(d.root_product)}};
                      }));
  out.push_back(timed(prefix(n) + "circulant.telescoping", "sum_k a_k Q_[2k-1+2s], s = 0, 1, 2, m = 1..n+2",
                      [&](CheckRecord& r) {
                        bool ok = true;
                        Json collapsed = Json::array();
                        for (int m = 1; m <= n + 2; ++m) {
                          const TelescopingResult t = telescoping_check(n, m);
                          ok = ok && t.passed();
                          if (t.collapsed) collapsed.push_back(m);
                        }
                        r.status = verdict(ok);
                        r.witness = {{"m_max", n + 2}, {"collapsed_m", collapsed}};
                      }));
  if (n >= 3) {
    out.push_back(timed(prefix(n) + "circulant.det3", "3x3 reduction determinant and root product", [&](CheckRecord& r) {
      const Det3Result d = det3_check(n);
      r.status = verdict(d.nonvanishing && d.derived_is_minus_product && d.expansion_is_derived_det);
      r.witness = {{"derived_det", big(d.derived_det)},
                   {"printed_det", big(d.printed_det)},
                   {"printed_expansion", big(d.printed_expansion)},
                   {"root_product", big(d.root_product)},
                   {"derived_equals_minus_root_product", d.derived_is_minus_product},
                   {"expansion_equals_derived_det", d.expansion_is_derived_det},
                   {"printed_det_equals_root_product", d.literal_equal}};
    }));
  } else {
    CheckRecord r;
    r.id = prefix(n) + "circulant.det3";
    r.equation = "3x3 reduction determinant and root product";
    r.status = Status::skipped;
    r.witness = {{"reason", "requires n >= 3"}};
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<CheckRecord> verify_checks(const std::string& target, int n, const RunConfig& config) {
  if (target == "bianchi") return bianchi_checks(n, config);
  if (target == "dsquared") return dsquared_checks(n);
  if (target == "shift") return shift_checks(n, config);
  if (target == "circulant") return circulant_checks(n);
  if (target == "counts") return counts_checks(n);
  throw std::invalid_argument("unknown verify target: " + target);
}

Report run(const RunConfig& config) {
  Report rep;
  rep.config = config;
  const int count = config.n_last - config.n_first + 1;
  std::vector<std::vector<CheckRecord>> slots(static_cast<std::size_t>(count));
  unsigned jobs = config.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.jobs;
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  RunConfig inner = config;
  // Parallelism goes to the n range when there is one.
  if (count > 1) inner.jobs = 1;
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&]() {
    for (int k = next++; k < count; k = next++) {
      try {
        const int n = config.n_first + k;
        slots[static_cast<std::size_t>(k)] =
            config.command == "analyze" ? analyze_checks(n, inner) : verify_checks(config.target, n, inner);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  for (auto& s : slots)
    for (auto& c : s) rep.checks.push_back(std::move(c));
  return rep;
}

}  // namespace qcc
