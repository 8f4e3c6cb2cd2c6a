#include "envalg/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "envalg/classical.hpp"
#include "envalg/enveloping.hpp"
#include "envalg/independence.hpp"

namespace envalg {

namespace {

using nlohmann::json;

struct Task {
  std::string id;
  std::function<CheckResult()> run;
};

// Runs tasks on `jobs` threads; results keep task order.
std::vector<CheckResult> run_tasks(const std::string& suite, std::vector<Task>& tasks, unsigned jobs, bool progress) {
  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const auto start = std::chrono::steady_clock::now();
      CheckResult r;
      try {
        r = tasks[t].run();
      } catch (const std::exception& e) {
        r.status = Status::Error;
        r.details = {{"error", e.what()}};
      }
      r.id = tasks[t].id;
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      results[t] = std::move(r);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(log);
        std::cerr << "[" << suite << "] " << d << "/" << tasks.size() << " " << tasks[t].id << "\n";
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

CheckResult zero_check(const QPoly& residual, json details = json::object()) {
  CheckResult r;
  r.details = std::move(details);
  if (residual.is_zero()) return r;
  r.status = Status::Fail;
  r.residual = format(residual);
  return r;
}

CheckResult zero_check(const ParamNCPoly& residual, json details = json::object()) {
  CheckResult r;
  r.details = std::move(details);
  if (residual.is_zero()) return r;
  r.status = Status::Fail;
  r.residual = format(residual);
  return r;
}

CheckResult verdict(bool ok, json details, const std::string& witness = "") {
  CheckResult r;
  r.details = std::move(details);
  if (!ok) {
    r.status = Status::Fail;
    r.residual = witness.empty() ? "mismatch" : witness;
  }
  return r;
}

// Exhaustive zero check over index tuples; the first failing tuple is the witness.
template <class F>
CheckResult zero_over(std::size_t count, F&& residual_at, json details) {
  std::size_t nonzero = 0;
  std::optional<std::pair<std::string, std::string>> first;
  for (std::size_t t = 0; t < count; ++t) {
    auto [label, res] = residual_at(t);
    if (res.is_zero()) continue;
    ++nonzero;
    if (!first) first = std::make_pair(label, format(res));
  }
  details["tuples"] = count;
  details["nonzero"] = nonzero;
  CheckResult r;
  r.details = std::move(details);
  if (first) {
    r.status = Status::Fail;
    r.details["witness_tuple"] = first->first;
    r.residual = first->second;
  }
  return r;
}

std::string pair_label(int M, int N) { return "M=" + std::to_string(M) + ",N=" + std::to_string(N); }

std::string tuple_label(int i, int j, int k, int l) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
}

std::vector<std::string> rational_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

// ---------------------------------------------------------------- shifts

struct Shift {
  std::string label;
  std::optional<RationalMatrix> numeric;
  std::optional<ShiftMatrix> symbolic;
  std::vector<int> signs;  // symmetry signs satisfied (so/sp)
  bool control = false;    // expected to violate commutativity

  json describe() const {
    json j{{"shift", label}};
    if (numeric) j["matrix"] = format_matrix(*numeric);
    j["symmetry_signs"] = signs;
    return j;
  }
};

Shift make_shift(const AlgebraSpec& spec, const std::string& designator) {
  ShiftMatrix m = parse_shift(spec, designator);
  Shift s{designator, std::nullopt, std::nullopt, m.symmetry_signs(), false};
  if (m.is_numeric())
    s.numeric = m.numeric();
  else
    s.symbolic = m;
  return s;
}

Shift random_shift(const AlgebraSpec& spec, int sign, std::uint64_t seed) {
  RationalMatrix m = random_shift_matrix(spec, spec.index_set(), sign, seed);
  Shift s{"random(sign=" + std::to_string(sign) + ",seed=" + std::to_string(seed) + ")", m, std::nullopt,
          ShiftMatrix::from_numeric(spec, spec.index_set(), m).symmetry_signs(), false};
  return s;
}

std::string diag_designator(const std::string& prefix, const std::vector<std::string>& entries) {
  std::string out = prefix;
  for (std::size_t a = 0; a < entries.size(); ++a) out += (a ? "," : "") + entries[a];
  return out;
}

std::vector<std::string> padded(std::vector<std::string> head, std::size_t m) {
  head.resize(std::min(head.size(), m));
  while (head.size() < m) head.push_back("0");
  return head;
}

// Signed symbolic diagonal: a_l at label l > 0, sign * a_l at -l.
std::string symbolic_signed_diag(const AlgebraSpec& spec, int sign) {
  std::vector<std::string> entries;
  for (int l : spec.index_set()) {
    if (l == 0) {
      entries.push_back("0");
    } else {
      std::string name = "a" + std::to_string(std::abs(l));
      entries.push_back(l < 0 && sign < 0 ? "-" + name : name);
    }
  }
  return diag_designator("sym-diag:", entries);
}

// Rank-2 semisimple element of g: diag(1,2,0,...) for gl, the defining
// matrix of X[n,n] for so/sp.
RationalMatrix default_rank2(const AlgebraSpec& spec) {
  if (!spec.is_symmetric_family()) {
    const std::size_t m = spec.index_set().size();
    RationalMatrix a(m, m);
    a(0, 0) = 1;
    if (m > 1) a(1, 1) = 2;
    return a;
  }
  return defining_matrix(spec, spec.n(), spec.n());
}

Shift numeric_shift(const AlgebraSpec& spec, const std::string& label, const RationalMatrix& m) {
  return Shift{label, m, std::nullopt, ShiftMatrix::from_numeric(spec, spec.index_set(), m).symmetry_signs(), false};
}

std::vector<Shift> user_shifts(const AlgebraSpec& spec, const SuiteOptions& o, bool numeric_only) {
  std::vector<Shift> out;
  for (const auto& d : o.shifts) {
    Shift s = make_shift(spec, d);
    if (numeric_only && !s.numeric) throw std::invalid_argument("this suite needs a numeric shift matrix, got '" + d + "'");
    out.push_back(std::move(s));
  }
  return out;
}

void require_gl(const AlgebraSpec& spec, const std::string& suite) {
  if (spec.is_symmetric_family()) throw std::invalid_argument(suite + " applies to gl(n) only, got " + spec.name());
}

void require_symmetric(const AlgebraSpec& spec, const std::string& suite) {
  if (!spec.is_symmetric_family()) throw std::invalid_argument(suite + " applies to so(n)/sp(n) only, got " + spec.name());
}

int bound(const SuiteOptions& o, int fallback) {
  const int b = o.max_power.value_or(fallback);
  if (b < 1) throw std::invalid_argument("--max-power must be >= 1");
  return b;
}

// ---------------------------------------------------------------- commutativity

void commutator_tasks(std::vector<Task>& tasks, const EnvelopingPtr& alg, const Shift& s, int max_power) {
  for (int M = 1; M <= max_power; ++M)
    for (int N = M + 1; N <= max_power; ++N)
      tasks.push_back({"commute[" + s.label + "](" + pair_label(M, N) + ")", [=] {
                         json d = s.describe();
                         if (s.symbolic)
                           return zero_check(commutator(shift_generator(alg, *s.symbolic, M),
                                                        shift_generator(alg, *s.symbolic, N)),
                                             d);
                         return zero_check(
                             commutator(shift_generator(alg, *s.numeric, M), shift_generator(alg, *s.numeric, N)), d);
                       }});
}

void negative_control_task(std::vector<Task>& tasks, const EnvelopingPtr& alg, const Shift& s, int max_power) {
  tasks.push_back({"negative-control[" + s.label + "]", [=] {
                     json d = s.describe();
                     for (int M = 1; M <= max_power; ++M)
                       for (int N = M + 1; N <= max_power; ++N) {
                         QPoly c = commutator(shift_generator(alg, *s.numeric, M), shift_generator(alg, *s.numeric, N));
                         if (!c.is_zero()) {
                           d["witness"] = pair_label(M, N);
                           d["witness_terms"] = c.size();
                           d["note"] = "commutator nonzero at " + pair_label(M, N);
                           return verdict(true, d);
                         }
                       }
                     return verdict(false, d, "all commutators vanish for a sign-violating shift");
                   }});
}

void centralize_tasks(std::vector<Task>& tasks, const EnvelopingPtr& alg, const Shift& s, int max_power) {
  const auto basis = stabilizer_basis(alg->spec(), *s.numeric);
  for (int N = 1; N <= max_power; ++N)
    tasks.push_back({"centralize[" + s.label + "](N=" + std::to_string(N) + ")", [=] {
                       json d = s.describe();
                       d["stabilizer_dim"] = basis.size();
                       return zero_over(
                           basis.size(),
                           [&](std::size_t b) {
                             return std::make_pair("B#" + std::to_string(b),
                                                   commutator(linear_element(alg, basis[b]),
                                                              shift_generator(alg, *s.numeric, N)));
                           },
                           d);
                     }});
}

void theorem1(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_gl(spec, "theorem1");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 4);
  const std::size_t m = spec.index_set().size();
  std::vector<Shift> shifts = user_shifts(spec, o, false);
  if (shifts.empty()) {
    shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "2"}, m))));
    shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "1"}, m))));
    shifts.push_back(make_shift(spec, diag_designator("sym-diag:", padded({"a1", "a2"}, m))));
    shifts.push_back(random_shift(spec, 0, o.seed));
  }
  for (const auto& s : shifts) {
    commutator_tasks(tasks, alg, s, K);
    if (s.numeric) centralize_tasks(tasks, alg, s, K);
  }
  params["max_power"] = K;
}

void theorem2(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_symmetric(spec, "theorem2");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  std::vector<Shift> shifts = user_shifts(spec, o, false);
  if (shifts.empty()) {
    std::vector<int> signs = o.sign ? std::vector<int>{*o.sign} : std::vector<int>{-1, 1};
    for (int s : signs) {
      if (s != -1 && s != 1) throw std::invalid_argument("--sign must be -1 or 1");
      shifts.push_back(random_shift(spec, s, o.seed));
      shifts.push_back(make_shift(spec, symbolic_signed_diag(spec, s)));
    }
    const std::size_t m = spec.index_set().size();
    if (spec.dimension() + 1 == m * m) {
      // gl(m) = g + scalars: every shift is a sign -1 matrix plus a Casimir shift.
      params["negative_control"] = "omitted: every matrix is a multiple of the identity plus an element of " + spec.name();
    } else {
      Shift control = random_shift(spec, 0, o.seed);
      control.control = true;
      shifts.push_back(control);
    }
  }
  for (const auto& s : shifts) {
    if (s.control)
      negative_control_task(tasks, alg, s, K);
    else
      commutator_tasks(tasks, alg, s, K);
  }
  params["max_power"] = K;
}

void centralizer(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  std::vector<Shift> shifts = user_shifts(spec, o, true);
  if (shifts.empty()) {
    shifts.push_back(numeric_shift(spec, "rank2", default_rank2(spec)));
    if (spec.is_symmetric_family())
      shifts.push_back(random_shift(spec, -1, o.seed));
    else
      shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "1"}, spec.index_set().size()))));
  }
  const int c = centralizer_factor(spec);
  const auto full = algebra_basis(spec);
  for (const auto& s : shifts) {
    const auto basis = stabilizer_basis(spec, *s.numeric);
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (int N = 1; N <= K; ++N)
        tasks.push_back({"stabilizer[" + s.label + "](B#" + std::to_string(b) + ",N=" + std::to_string(N) + ")", [=] {
                           json d = s.describe();
                           d["B"] = format_matrix(basis[b]);
                           return zero_check(check_centralizer(alg, *s.numeric, basis[b], N), d);
                         }});
    for (int N = 1; N <= K; ++N)
      tasks.push_back({"bracket-identity[" + s.label + "](N=" + std::to_string(N) + ")", [=] {
                         json d = s.describe();
                         d["factor"] = c;
                         return zero_over(
                             full.size(),
                             [&](std::size_t b) {
                               return std::make_pair(spec.generator_name(static_cast<int>(b)),
                                                     check_centralizer(alg, *s.numeric, full[b], N));
                             },
                             d);
                       }});
  }
  params["max_power"] = K;
  params["factor"] = c;
}

void tensorial(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  const std::vector<int> I = spec.index_set();
  const std::size_t m = I.size();
  for (int M = 0; M <= K; ++M)
    for (std::size_t a = 0; a < m; ++a)
      tasks.push_back({"tensorial(M=" + std::to_string(M) + ",i=" + std::to_string(I[a]) + ")", [=] {
                         return zero_over(
                             m * m * m,
                             [&](std::size_t t) {
                               const int j = I[t / (m * m)], k = I[(t / m) % m], l = I[t % m];
                               return std::make_pair(tuple_label(I[a], j, k, l),
                                                     tensorial_residual(alg, M, I[a], j, k, l));
                             },
                             json::object());
                       }});
  params["max_power"] = K;
}

void casimir_central(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 4);
  for (int M = 1; M <= K; ++M)
    tasks.push_back({"central(M=" + std::to_string(M) + ")", [=] {
                       const QPoly c = casimir(alg, M);
                       json d{{"casimir_terms", c.size()}};
                       if (c.is_zero()) d["note"] = "(X^" + std::to_string(M) + ") vanishes identically";
                       return zero_over(
                           spec.dimension(),
                           [&](std::size_t g) {
                             const auto [i, j] = spec.generators()[g];
                             return std::make_pair(spec.generator_name(static_cast<int>(g)),
                                                   commutator(c, QPoly::generator(alg, i, j)));
                           },
                           d);
                     }});
  params["max_power"] = K;
}

void prop1(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_gl(spec, "prop1");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  const std::vector<int> I = spec.index_set();
  const std::size_t m = I.size();
  for (int M = 1; M <= K; ++M)
    for (int N = 1; N <= K; ++N)
      tasks.push_back({"prop1(" + pair_label(M, N) + ")", [=] {
                         return zero_over(
                             m * m * m * m,
                             [&](std::size_t t) {
                               const int i = I[t / (m * m * m)], j = I[(t / (m * m)) % m], k = I[(t / m) % m],
                                         l = I[t % m];
                               return std::make_pair(tuple_label(i, j, k, l),
                                                     proposition1_residual(alg, M, N, i, j, k, l));
                             },
                             json::object());
                       }});
  params["max_power"] = K;
}

void prop2(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_gl(spec, "prop2");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  std::vector<Shift> shifts = user_shifts(spec, o, true);
  if (shifts.empty()) {
    const std::size_t m = spec.index_set().size();
    shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "2"}, m))));
    shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "1"}, m))));
    shifts.push_back(random_shift(spec, 0, o.seed));
  }
  for (const auto& s : shifts)
    for (int M = 1; M <= K; ++M)
      for (int N = 1; N <= K; ++N) {
        tasks.push_back({"prop2[" + s.label + "](" + pair_label(M, N) + ")",
                         [=] { return zero_check(proposition2_residual(alg, *s.numeric, M, N), s.describe()); }});
        tasks.push_back({"prop2-intermediate[" + s.label + "](" + pair_label(M, N) + ")", [=] {
                           return zero_check(proposition2_intermediate_residual(alg, *s.numeric, M, N), s.describe());
                         }});
      }
  params["max_power"] = K;
}

json expansion_json(const CentralExpansion& e) {
  std::vector<std::string> coeffs;
  for (const auto& c : e.coefficients) coeffs.push_back(format(c));
  return {{"degree", e.degree},
          {"coefficients", coeffs},
          {"casimir_basis", e.casimir_basis},
          {"solution_freedom", e.solution_freedom},
          {"leading_determined", e.leading_determined},
          {"leading_normalized", e.leading_normalized}};
}

void prop3(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_symmetric(spec, "prop3");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  const std::vector<int> I = spec.index_set();
  const std::size_t m = I.size();
  for (int D = 1; D <= K + 1; ++D) {
    auto expansion = std::make_shared<std::optional<CentralExpansion>>();
    auto once = std::make_shared<std::once_flag>();
    auto get = [=] {
      std::call_once(*once, [&] { *expansion = solve_central_expansion(alg, D); });
      return **expansion;
    };
    const std::string d = "(D=" + std::to_string(D) + ")";
    tasks.push_back({"prop3-solve" + d, [=] {
                       const CentralExpansion e = get();
                       return verdict(e.solvable, expansion_json(e), "no central expansion exists");
                     }});
    tasks.push_back({"prop3-identity" + d, [=] {
                       const CentralExpansion e = get();
                       if (!e.solvable) return verdict(false, json::object(), "no central expansion exists");
                       return zero_over(
                           m * m,
                           [&](std::size_t t) {
                             const int i = I[t / m], j = I[t % m];
                             return std::make_pair("(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                                   proposition3_residual(alg, e, i, j));
                           },
                           json::object());
                     }});
    tasks.push_back({"prop3-leading" + d, [=] {
                       const CentralExpansion e = get();
                       json det = expansion_json(e);
                       const QPoly expected = QPoly::constant(alg, Rational(D % 2 == 0 ? 1 : -1));
                       const QPoly& lead = e.coefficients.back();
                       det["expected"] = format(expected);
                       det["leading"] = format(lead);
                       if (!e.leading_determined)
                         det["note"] = "leading coefficient not forced by the identity; (-1)^D is a consistent choice";
                       return verdict(e.solvable && lead == expected, det, format(lead - expected));
                     }});
  }
  params["max_power"] = K;
  params["degrees"] = "1.." + std::to_string(K + 1);
}

std::vector<CentralExpansion> expansions_up_to(const EnvelopingPtr& alg, int K) {
  std::vector<CentralExpansion> out;
  for (int D = 0; D <= K; ++D) {
    out.push_back(solve_central_expansion(alg, D));
    if (!out.back().solvable) throw std::runtime_error("no central expansion of degree " + std::to_string(D));
  }
  return out;
}

void prop4(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_symmetric(spec, "prop4");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  auto ex = std::make_shared<std::vector<CentralExpansion>>(expansions_up_to(alg, K));
  const int sign = proposition4_derived_sign(spec);
  const std::vector<int> I = spec.index_set();
  const std::size_t m = I.size();
  for (int M = 1; M <= K; ++M)
    for (int N = 1; N <= K; ++N)
      tasks.push_back({"prop4(" + pair_label(M, N) + ")", [=] {
                         const CentralExpansion& cn = (*ex)[static_cast<std::size_t>(N)];
                         std::size_t printed_nonzero = 0;
                         CheckResult r = zero_over(
                             m * m * m * m,
                             [&](std::size_t t) {
                               const int i = I[t / (m * m * m)], j = I[(t / (m * m)) % m], k = I[(t / m) % m],
                                         l = I[t % m];
                               if (!proposition4_residual(alg, cn, M, N, i, j, k, l, -1).is_zero()) ++printed_nonzero;
                               return std::make_pair(tuple_label(i, j, k, l),
                                                     proposition4_residual(alg, cn, M, N, i, j, k, l, sign));
                             },
                             json{{"sign", sign}});
                         r.details["uniform_minus_sign_nonzero"] = printed_nonzero;
                         return r;
                       }});
  params["max_power"] = K;
  params["sign"] = sign;
}

void prop5(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  require_symmetric(spec, "prop5");
  auto alg = UniversalEnveloping::of(spec);
  const int K = bound(o, 3);
  auto ex = std::make_shared<std::vector<CentralExpansion>>(expansions_up_to(alg, K));
  std::vector<Shift> shifts = user_shifts(spec, o, true);
  if (shifts.empty()) {
    std::vector<int> signs = o.sign ? std::vector<int>{*o.sign} : std::vector<int>{-1, 1};
    for (int s : signs) shifts.push_back(random_shift(spec, s, o.seed));
  }
  for (const auto& s : shifts) {
    if (s.signs.empty()) throw std::invalid_argument("prop5 needs a shift satisfying a symmetry sign: " + s.label);
    const int sign = s.signs.size() == 2 ? (o.sign ? *o.sign : -1) : s.signs.front();
    for (int M = 1; M <= K; ++M)
      for (int N = 1; N <= K; ++N) {
        const std::string tag = "[" + s.label + "](" + pair_label(M, N) + ")";
        json d = s.describe();
        d["sign"] = sign;
        tasks.push_back({"prop5-i" + tag, [=] { return zero_check(proposition5_residual_i(alg, *s.numeric, *ex, M, N), d); }});
        tasks.push_back({"prop5-ii" + tag, [=] {
                           return zero_check(proposition5_residual_ii(alg, *s.numeric, *ex, M, N, sign), d);
                         }});
        tasks.push_back({"contraction-T2" + tag, [=] { return zero_check(contraction_t2(alg, *s.numeric, M, N), d); }});
      }
  }
  params["max_power"] = K;
}

// ---------------------------------------------------------------- chains and ranks

json certificate_json(const RankCertificate& c) {
  std::vector<std::vector<std::string>> points;
  for (const auto& p : c.trial_points) points.push_back(rational_strings(p));
  return {{"family", c.family},     {"generators", c.labels},    {"trial_seeds", c.trial_seeds},
          {"trial_points", points}, {"trial_ranks", c.trial_ranks}, {"max_rank", c.max_rank},
          {"target", c.target},     {"stable", c.stable},        {"generator_count", c.labels.size()},
          {"bound", "probabilistic lower bound (Schwartz-Zippel); target (dim g + ind g)/2 is the upper bound"}};
}

CheckResult rank_check(const RankCertificate& c) {
  json d = certificate_json(c);
  d["note"] = "rank " + std::to_string(c.max_rank) + " / target " + std::to_string(c.target) +
              (c.stable ? "" : ", trials disagree");
  return verdict(c.pass, d, "rank " + std::to_string(c.max_rank) + " != target " + std::to_string(c.target));
}

void chain(const SuiteOptions& o, std::vector<Task>& tasks, json& params, std::string& algebra) {
  if (o.chain_file.empty()) throw std::invalid_argument("chain needs a chain file");
  ChainSpec spec = read_chain_file(o.chain_file);
  auto family = std::make_shared<CommutativeFamily>(chain_generators(spec));
  algebra = spec.algebra.designator();
  std::vector<std::string> members;
  for (const auto& m : family->members) members.push_back(m.label);
  params["chain_file"] = o.chain_file;
  params["steps"] = spec.steps;
  params["members"] = members;
  params["trials"] = o.trials;
  for (std::size_t a = 0; a < family->members.size(); ++a)
    for (std::size_t b = a + 1; b < family->members.size(); ++b)
      tasks.push_back({"commute(" + family->members[a].label + "," + family->members[b].label + ")", [=] {
                         const auto& x = family->members[a];
                         const auto& y = family->members[b];
                         return zero_check(commutator(x.element, y.element),
                                           json{{"provenance", {x.provenance, y.provenance}}});
                       }});
  const int trials = o.trials;
  const std::uint64_t seed = o.seed;
  tasks.push_back({"rank", [=] { return rank_check(transcendency_check(*family, trials, seed)); }});
}

void rank_suite(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  auto alg = UniversalEnveloping::of(spec);
  std::vector<ClassicalPolynomial> gens;
  std::vector<std::string> labels;
  if (!o.polynomials.empty()) {
    for (const auto& text : o.polynomials) {
      gens.push_back(top_symbol(parse_polynomial(alg, text)));
      labels.push_back(text);
    }
  } else {
    auto shifts = user_shifts(spec, o, true);
    if (shifts.size() != 1) throw std::invalid_argument("rank needs --poly generators or exactly one --A");
    const int K = bound(o, static_cast<int>(spec.index_set().size()) - 1);
    const bool sym = spec.is_symmetric_family();
    const int m = static_cast<int>(spec.index_set().size());
    for (int M = sym ? 2 : 1; M <= m; M += sym ? 2 : 1) {
      gens.push_back(top_symbol(casimir(alg, M)));
      labels.push_back("(X^" + std::to_string(M) + ")");
    }
    for (int M = 1; M <= K; ++M) {
      gens.push_back(top_symbol(shift_generator(alg, *shifts[0].numeric, M)));
      labels.push_back("(AX^" + std::to_string(M) + ")");
    }
    params["shift"] = shifts[0].describe();
    params["max_power"] = K;
  }
  params["generators"] = labels;
  params["trials"] = o.trials;
  const int trials = o.trials;
  const std::uint64_t seed = o.seed;
  const auto target = o.target;
  tasks.push_back({"rank", [=] { return rank_check(jacobian_rank(gens, labels, trials, seed, target, spec.name())); }});
}

// ---------------------------------------------------------------- classical

void expand(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  const int M = o.M.value_or(2);
  if (M < 1) throw std::invalid_argument("--M must be >= 1");
  auto shifts = user_shifts(spec, o, true);
  if (shifts.size() != 1) throw std::invalid_argument("expand needs exactly one --A");
  const Shift s = shifts[0];
  auto terms = std::make_shared<std::vector<ClassicalPolynomial>>(shift_expand(spec, M, *s.numeric));
  for (int k = 1; k <= M; ++k)
    tasks.push_back({"S^{" + std::to_string(k) + "," + std::to_string(M) + "}", [=] {
                       CheckResult r;
                       r.details = {{"polynomial", (*terms)[static_cast<std::size_t>(k - 1)].format()},
                                    {"note", (*terms)[static_cast<std::size_t>(k - 1)].format()}};
                       return r;
                     }});
  const int samples = 10;
  const std::uint64_t seed = o.seed;
  tasks.push_back({"expansion-consistency", [=] {
                     const ClassicalPolynomial base = casimir_classical(spec, M);
                     const std::size_t m = spec.index_set().size();
                     std::uniform_int_distribution<int> dist(-10, 10);
                     for (int t = 0; t < samples; ++t) {
                       std::mt19937_64 rng(trial_seed(seed, static_cast<std::size_t>(t)));
                       PointOnDual x = random_point(spec, rng);
                       const Rational lambda = dist(rng);
                       RationalMatrix y = x.matrix() + lambda * *s.numeric;
                       RationalMatrix p = RationalMatrix::identity(m);
                       for (int e = 0; e < M; ++e) p = p * y;
                       Rational rhs = base.poly().evaluate(x.coordinates);
                       Rational power = 1;
                       for (int k = 1; k <= M; ++k) {
                         power *= lambda;
                         rhs += power * (*terms)[static_cast<std::size_t>(k - 1)].poly().evaluate(x.coordinates);
                       }
                       if (p.trace() != rhs)
                         return verdict(false, json{{"sample", t}},
                                        "Tr(X+lA)^M = " + p.trace().get_str() + " vs " + rhs.get_str());
                     }
                     return verdict(true, json{{"samples", samples}});
                   }});
  params["M"] = M;
  params["shift"] = s.describe();
}

void lemma2(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  auto shifts = user_shifts(spec, o, true);
  if (shifts.size() > 1) throw std::invalid_argument("lemma2 takes at most one --A");
  const Shift s = shifts.empty() ? random_shift(spec, spec.is_symmetric_family() ? -1 : 0, o.seed) : shifts[0];
  if (o.points < 1) throw std::invalid_argument("--points must be >= 1");
  const int m = static_cast<int>(spec.index_set().size());
  auto points = std::make_shared<std::vector<PointOnDual>>();
  std::vector<std::uint64_t> seeds;
  for (int p = 0; p < o.points; ++p) {
    seeds.push_back(trial_seed(o.seed, static_cast<std::size_t>(p)));
    points->push_back(random_rank2_point(spec, seeds.back()));
  }
  for (int M = 2; M <= m; ++M)
    for (int k = 1; k < M; ++k) {
      if (M - k < 3) continue;
      tasks.push_back({"minor-invariant(M=" + std::to_string(M) + ",k=" + std::to_string(k) + ")", [=] {
                         const ClassicalPolynomial P = charpoly_shift_invariant(spec, M, k, *s.numeric);
                         std::vector<std::string> values;
                         bool ok = true;
                         for (const auto& x : *points) {
                           const Rational v = P.poly().evaluate(x.coordinates);
                           values.push_back(v.get_str());
                           ok = ok && sgn(v) == 0;
                         }
                         json d = s.describe();
                         d["degree_in_X"] = P.degree();
                         d["values"] = values;
                         return verdict(ok, d, "nonzero value at a rank-2 point");
                       }});
    }
  std::vector<std::string> mats;
  for (const auto& x : *points) mats.push_back(format_matrix(x.matrix()));
  params["shift"] = s.describe();
  params["point_seeds"] = seeds;
  params["points"] = mats;
}

void duality(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  if (o.points < 1) throw std::invalid_argument("--points must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  const int K = bound(o, 3);
  const bool sym = spec.is_symmetric_family();
  if (o.M) {
    if (o.k) {
      if (*o.k < 1 || *o.k >= *o.M) throw std::invalid_argument("duality needs 1 <= k < M");
      pairs.emplace_back(*o.M, *o.k);
    } else {
      for (int k = 1; k < *o.M; ++k) pairs.emplace_back(*o.M, k);
    }
  } else {
    for (int M = 2; M <= K; ++M) {
      if (sym && M % 2) continue;  // odd traces vanish identically
      for (int k = 1; k < M; ++k) pairs.emplace_back(M, k);
    }
  }
  auto xs = std::make_shared<std::vector<std::pair<PointOnDual, PointOnDual>>>();
  std::vector<std::uint64_t> seeds;
  for (int p = 0; p < o.points; ++p) {
    const std::uint64_t s = trial_seed(o.seed, static_cast<std::size_t>(p));
    seeds.push_back(s);
    std::mt19937_64 rng(s);
    PointOnDual x = random_point(spec, rng);
    PointOnDual a = random_point(spec, rng);
    xs->emplace_back(std::move(x), std::move(a));
  }
  for (auto [M, k] : pairs)
    tasks.push_back({"duality(M=" + std::to_string(M) + ",k=" + std::to_string(k) + ")", [=] {
                       std::vector<bool> shifted, plain;
                       bool vanishing = true;
                       for (const auto& [x, a] : *xs) {
                         DualityResult r = brailov_duality(spec, M, k, x, a);
                         shifted.push_back(r.holds_shifted);
                         plain.push_back(r.holds_plain);
                         vanishing = vanishing && std::all_of(r.lhs.begin(), r.lhs.end(),
                                                              [](const Rational& v) { return sgn(v) == 0; });
                       }
                       const bool all_shifted = std::all_of(shifted.begin(), shifted.end(), [](bool b) { return b; });
                       const bool all_plain = std::all_of(plain.begin(), plain.end(), [](bool b) { return b; });
                       const bool none_shifted = std::none_of(shifted.begin(), shifted.end(), [](bool b) { return b; });
                       const bool none_plain = std::none_of(plain.begin(), plain.end(), [](bool b) { return b; });
                       json d{{"holds_M-k-1", shifted}, {"holds_M-k", plain}};
                       if (vanishing && all_plain) {
                         d["validated"] = "degenerate";
                         d["note"] = "all gradients vanish identically";
                         return verdict(true, d);
                       }
                       std::string validated = "none";
                       if (all_shifted && none_plain) validated = "M-k-1";
                       if (all_plain && none_shifted) validated = "M-k";
                       d["validated"] = validated;
                       d["note"] = "index " + validated;
                       return verdict(validated != "none", d, "no single index convention holds at every seed");
                     }});
  params["point_seeds"] = seeds;
  params["max_power"] = K;
}

void tangent(const AlgebraSpec& spec, const SuiteOptions& o, std::vector<Task>& tasks, json& params) {
  std::vector<Shift> shifts = user_shifts(spec, o, true);
  if (shifts.empty()) {
    if (spec.is_symmetric_family()) {
      shifts.push_back(numeric_shift(spec, "rank2", default_rank2(spec)));
    } else {
      const std::size_t m = spec.index_set().size();
      shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "1"}, m))));
      shifts.push_back(make_shift(spec, diag_designator("diag:", padded({"1", "2"}, m))));
    }
  }
  const int trials = o.trials;
  const std::uint64_t seed = o.seed;
  for (const auto& s : shifts) {
    auto result = std::make_shared<std::optional<TangentIntersection>>();
    auto once = std::make_shared<std::once_flag>();
    auto get = [=] {
      std::call_once(*once, [&] { *result = tangent_intersection(spec, *s.numeric, trials, seed); });
      return **result;
    };
    tasks.push_back({"tangent[" + s.label + "]", [=] {
                       const TangentIntersection t = get();
                       json d = s.describe();
                       d["lhs"] = t.projection_dim;
                       d["rhs"] = t.half_orbit_dim;
                       d["dim_g"] = t.dim_g;
                       d["dim_stabilizer"] = t.dim_stabilizer;
                       d["trial_lhs"] = t.trial_projection_dims;
                       d["plain_intersection"] = t.intersection_dim;
                       d["trial_seeds"] = t.trial_seeds;
                       d["note"] = "lhs " + std::to_string(t.projection_dim) + ", rhs " + std::to_string(t.half_orbit_dim);
                       return verdict(t.pass, d,
                                      "lhs " + std::to_string(t.projection_dim) + " != rhs " +
                                          std::to_string(t.half_orbit_dim));
                     }});
    tasks.push_back({"stabilizer-index[" + s.label + "]", [=] {
                       const TangentIntersection t = get();
                       json d{{"blocks", t.stabilizer_blocks},
                              {"ind_blocks", t.ind_stabilizer_blocks},
                              {"ind_kirillov", t.ind_stabilizer},
                              {"ind_g", t.ind_g}};
                       d["note"] = "g_A = " + t.stabilizer_blocks;
                       const bool ok = t.ind_stabilizer == t.ind_stabilizer_blocks && t.ind_stabilizer == t.ind_g;
                       return verdict(ok, d,
                                      "ind g_A (blocks " + std::to_string(t.ind_stabilizer_blocks) + ", Kirillov " +
                                          std::to_string(t.ind_stabilizer) + ") vs ind g " + std::to_string(t.ind_g));
                     }});
  }
  params["trials"] = trials;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem1", "theorem2", "centralizer", "tensorial", "prop1",
                                              "prop2",    "prop3",    "prop4",       "prop5",     "casimir-central",
                                              "chain",    "expand",   "rank",        "lemma2",    "duality",
                                              "tangent"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  std::vector<Task> tasks;
  json params = json::object();
  std::string algebra;
  if (name == "chain") {
    chain(o, tasks, params, algebra);
  } else {
    if (o.algebra.empty()) throw std::invalid_argument(name + " needs --algebra");
    const AlgebraSpec spec = parse_algebra(o.algebra);
    algebra = spec.designator();
    using Builder = void (*)(const AlgebraSpec&, const SuiteOptions&, std::vector<Task>&, json&);
    static const std::vector<std::pair<std::string, Builder>> builders{
        {"theorem1", theorem1}, {"theorem2", theorem2}, {"centralizer", centralizer},
        {"tensorial", tensorial}, {"casimir-central", casimir_central}, {"prop1", prop1},
        {"prop2", prop2},       {"prop3", prop3},       {"prop4", prop4},
        {"prop5", prop5},       {"rank", rank_suite},   {"expand", expand},
        {"lemma2", lemma2},     {"duality", duality},   {"tangent", tangent}};
    auto it = std::find_if(builders.begin(), builders.end(), [&](const auto& b) { return b.first == name; });
    if (it == builders.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    it->second(spec, o, tasks, params);
  }
  SuiteReport report;
  report.suite = name;
  report.algebra = algebra;
  report.parameters = std::move(params);
  report.seed = o.seed;
  report.checks = run_tasks(name, tasks, o.jobs, o.progress);
  return report;
}

}  // namespace envalg
