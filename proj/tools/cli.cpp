// Copyright 2026 The kf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "kf/asym.hpp"
#include "kf/catalog.hpp"
#include "kf/error.hpp"
#include "kf/khinchin.hpp"
#include "kf/lagrange.hpp"
#include "kf/large_powers.hpp"
#include "selftest.hpp"

namespace kf::cli {

void Table::add_column(std::string name, bool is_text) {
  header.push_back(std::move(name));
  text.push_back(is_text);
}

void Table::add_row(std::vector<std::string> row) {
  row.resize(header.size());
  rows.push_back(std::move(row));
}

std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string decimal(const LogNumber& x) {
  if (!x.in_range()) return "";
  return decimal(x.to_double());
}

std::string log_cell(const LogNumber& x) {
  return "ln=" + (x.is_zero() ? std::string("-inf") : decimal(x.log_abs()));
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string emit_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + csv_cell(t.header[i]);
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

std::string emit_table(const Table& t) {
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    return s + '\n';
  };
  std::string s = line(t.header);
  for (const auto& row : t.rows) s += line(row);
  return s;
}

std::string emit_jsonl(const Table& t) {
  std::string s;
  for (const auto& row : t.rows) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& cell = row[i];
      char* end = nullptr;
      if (!t.text[i] && !cell.empty()) {
        errno = 0;
        const long long iv = std::strtoll(cell.c_str(), &end, 10);
        if (*end == '\0' && errno != ERANGE) {
          j[t.header[i]] = iv;
          continue;
        }
      }
      errno = 0;
      const double v = cell.empty() ? 0.0 : std::strtod(cell.c_str(), &end);
      if (!t.text[i] && !cell.empty() && *end == '\0' && std::isfinite(v)) {
        j[t.header[i]] = v;
      } else {
        j[t.header[i]] = cell;
      }
    }
    s += j.dump() + '\n';
  }
  return s;
}

namespace {

struct Config {
  int trunc = kDefaultTruncation;
  double root_tol = 1e-9;
  double quad_tol = 1e-8;
  std::string out = "table";
  std::uint64_t seed = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family family_of(const std::string& spec, const Config& c) { return make_family(parse_spec(spec), c.trunc); }

std::string exact_text(const ScaledSeries& s, int n) {
  std::string t = s.series[n].get_str();
  if (sgn(s.exp_shift) != 0) t += "*exp(" + s.exp_shift.get_str() + ")";
  return t;
}

LogNumber exact_value(const ScaledSeries& s, int n) {
  return LogNumber::from_rational(s.series[n]) * LogNumber::from_log(s.exp_shift.get_d());
}

std::string ratio_cell(const std::optional<LogNumber>& exact, const LogNumber& est) {
  if (!exact || exact->is_zero() || est.is_zero()) return "";
  return decimal(ratio(*exact, est));
}

// ---- coeff ------------------------------------------------------------------

struct CoeffArgs {
  std::string family;
  long n = 0;
  std::vector<std::string> methods{"exact", "hayman"};
  long a = 1;
  long b = 1;
};

Table coeff_verb(const CoeffArgs& a, const Config& c) {
  const Family fam = family_of(a.family, c);
  SolveOptions so;
  so.tol_value = c.root_tol * std::max(1.0, static_cast<double>(a.n));

  Table t;
  t.add_column("method", true);
  t.add_column("n");
  t.add_column("value");
  t.add_column("ln", true);
  t.add_column("exact", true);
  t.add_column("ratio");

  std::optional<LogNumber> ex;
  std::string ex_text;
  for (const auto& m : a.methods) {
    if (m != "exact") continue;
    if (a.n < 0) throw Error(ErrorCode::IndexBeyondTruncation, "series", "n must be >= 0");
    if (a.n > fam.trunc()) {
      throw Error(ErrorCode::IndexBeyondTruncation, "series",
                  "n = " + std::to_string(a.n) + " exceeds the truncation " + std::to_string(fam.trunc()));
    }
    const auto s = fam.exact(static_cast<int>(a.n));
    ex = exact_value(*s, static_cast<int>(a.n));
    ex_text = exact_text(*s, static_cast<int>(a.n));
  }
  for (const auto& m : a.methods) {
    const std::string n = std::to_string(a.n);
    if (m == "exact") {
      t.add_row({m, n, decimal(*ex), log_cell(*ex), ex_text, ""});
      continue;
    }
    Estimate e;
    if (m == "hayman") e = hayman_estimate(fam, a.n, so);
    else if (m == "bd") e = baez_duarte_estimate(fam, a.n);
    else if (m == "hr") e = closed_partition_asym({PartitionKind::HardyRamanujan}, a.n);
    else if (m == "distinct") e = closed_partition_asym({PartitionKind::Distinct}, a.n);
    else if (m == "ingham") e = closed_partition_asym({PartitionKind::Ingham, a.a, a.b}, a.n);
    else if (m == "wright") e = closed_partition_asym({PartitionKind::WrightPlane}, a.n);
    else if (m == "colored") e = closed_partition_asym({PartitionKind::Colored, a.a, a.b}, a.n);
    else if (m == "mw") e = moser_wyman(a.n);
    t.add_row({m, n, decimal(e.value), log_cell(e.value), "", ratio_cell(ex, e.value)});
  }
  return t;
}

// ---- family -----------------------------------------------------------------

struct FamilyArgs {
  std::string family;
  double t = 0.0;
  std::vector<std::string> stats{"logf", "mean", "var"};
};

const std::vector<std::string> kStats = {"logf", "mean", "var", "sd",   "k3",     "k4",       "clan",
                                         "gauss", "halfwidth", "maxterm", "radius", "mean_sup", "q"};

Table family_verb(const FamilyArgs& a, const Config& c) {
  const Family fam = family_of(a.family, c);
  fam.check_radius(a.t);
  Table t;
  t.add_column("family", true);
  t.add_column("t");
  t.add_column("stat", true);
  t.add_column("value");
  t.add_column("ln", true);
  for (const auto& s : a.stats) {
    LogNumber v;
    if (s == "logf") v = LogNumber::from_log(fam.log_value(a.t));
    else if (s == "mean") v = LogNumber::from_double(mean(fam, a.t));
    else if (s == "var") v = LogNumber::from_double(variance(fam, a.t));
    else if (s == "sd") v = LogNumber::from_double(std::sqrt(variance(fam, a.t)));
    else if (s == "k3") v = LogNumber::from_double(fam.cumulants(a.t)[2]);
    else if (s == "k4") v = LogNumber::from_double(fam.cumulants(a.t)[3]);
    else if (s == "clan") v = LogNumber::from_double(clan_ratio(fam, a.t));
    else if (s == "gauss") v = LogNumber::from_double(gaussianity_ratio(fam, a.t));
    else if (s == "halfwidth") v = LogNumber::from_double(zero_free_halfwidth(fam, a.t));
    else if (s == "maxterm") v = LogNumber::from_double(static_cast<double>(max_term(fam, a.t).index));
    else if (s == "radius") v = LogNumber::from_double(fam.radius());
    else if (s == "mean_sup") v = LogNumber::from_double(fam.mean_sup());
    else if (s == "q") v = LogNumber::from_double(fam.q_gcd());
    // logf is itself a logarithm: the decimal column holds f(t).
    t.add_row({fam.name(), decimal(a.t), s, decimal(v), log_cell(v)});
  }
  return t;
}

// ---- largepow ---------------------------------------------------------------

struct LargePowArgs {
  std::string psi;
  std::string h;
  long n = 1;
  long k = 0;
  std::string regime = "auto";
  std::optional<double> A, B, L;
  double omega = 0.0;
  int J = 2;
  bool no_exact = false;
};

const std::vector<std::string> kRegimes = {"auto",    "comparable",      "limit",   "boundary",
                                           "small-k", "small-k-refined", "fixed-k", "large-k"};

Table largepow_verb(const LargePowArgs& a, const Config& c) {
  PowerCoeffQuery q{family_of(a.psi, c), a.n, a.k, std::nullopt};
  if (!a.h.empty()) q.h = family_of(a.h, c);
  const double r = static_cast<double>(a.k) / static_cast<double>(a.n);

  Regime regime;
  if (a.regime == "auto") {
    regime = auto_regime(q);
  } else {
    for (auto kind : {Regime::Comparable, Regime::LimitL, Regime::BoundaryL, Regime::SmallK,
                      Regime::SmallKRefined, Regime::FixedK, Regime::LargeK})
      if (a.regime == regime_name(kind)) regime.kind = kind;
    regime.A = r;
    regime.B = r;
    regime.L = r;
  }
  if (a.A) regime.A = *a.A;
  if (a.B) regime.B = *a.B;
  if (a.L) regime.L = *a.L;
  if (a.regime != "auto" || regime.kind == Regime::LimitL) regime.omega = a.omega;
  regime.J = a.J;

  const Estimate e = estimate_power(q, regime);
  std::optional<LogNumber> ex;
  std::string ex_text;
  if (!a.no_exact) {
    try {
      const ExactPowerCoeff x = exact_power_coeff(q);
      ex = x.to_log();
      ex_text = x.value.get_str();
      if (x.log_scale != 0.0) ex_text += "*exp(" + decimal(x.log_scale) + ")";
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BudgetExceeded) throw;
      ex_text = "budget";
    }
  }
  Table t;
  t.add_column("psi", true);
  t.add_column("n");
  t.add_column("k");
  t.add_column("regime", true);
  t.add_column("value");
  t.add_column("ln", true);
  t.add_column("exact", true);
  t.add_column("exact_value");
  t.add_column("ratio");
  t.add_row({q.psi.name(), std::to_string(a.n), std::to_string(a.k), regime_name(regime.kind), decimal(e.value),
             log_cell(e.value), ex_text, ex ? decimal(*ex) : "", ratio_cell(ex, e.value)});
  return t;
}

// ---- lagrange ---------------------------------------------------------------

struct LagrangeArgs {
  std::string kind = "omm";
  std::string psi = "exp";
  std::string h;
  std::string family = "poly:0,1";
  long n = 1;
  long q = 1;
  long j = 1;
  double t = 1.0;
  double s = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t trials = 100000;
};

const std::vector<std::string> kLagrangeKinds = {"omm", "power", "scaled", "func", "borel", "poisson", "general",
                                                 "sample"};

Table estimate_table(const std::string& label, long n, const Estimate& e, const std::optional<LogNumber>& ex,
                     const std::string& ex_text) {
  Table t;
  t.add_column("kind", true);
  t.add_column("n");
  t.add_column("value");
  t.add_column("ln", true);
  t.add_column("exact", true);
  t.add_column("exact_value");
  t.add_column("ratio");
  t.add_row({label, std::to_string(n), decimal(e.value), log_cell(e.value), ex_text, ex ? decimal(*ex) : "",
             ratio_cell(ex, e.value)});
  return t;
}

// Exact series of psi for inversion, refused when it carries an exponential scale.
Series plain_series(const Family& f, int order) {
  const auto s = f.exact(order);
  if (sgn(s->exp_shift) != 0) {
    throw Error(ErrorCode::NoCoefficientAccess, "khinchin", f.name() + " has no rational coefficient lattice");
  }
  return s->series;
}

Table lagrange_verb(const LagrangeArgs& a, const Config& c, std::ostream& diag) {
  if (a.n < 1) throw Error(ErrorCode::DomainError, "lagrange", "n must be >= 1");
  const int n = static_cast<int>(a.n);
  if (a.kind == "borel") {
    const LogNumber ex = LogNumber::from_double(borel_tanner_pmf(a.t, a.j, a.n));
    return estimate_table("borel", a.n, borel_tanner_asym(a.t, a.j, a.n), ex, "");
  }
  if (a.kind == "poisson") {
    const LogNumber ex = LogNumber::from_double(poisson_poisson_pmf(a.s, a.t, a.n));
    return estimate_table("poisson", a.n, poisson_poisson_asym(a.s, a.t, a.n), ex, "");
  }
  const Family psi = family_of(a.psi, c);
  if (a.kind == "general" || a.kind == "sample") {
    const LagrangianSpec spec{psi, family_of(a.family, c), a.t, a.s};
    if (a.kind == "general") return estimate_table("general", a.n, general_lagrangian_asym(spec, a.n),
                                                   lagrangian_pmf(spec, a.n), "");
    const GwSample g = gw_sample(spec, a.trials, c.seed);
    Table t;
    t.add_column("n");
    t.add_column("count");
    t.add_column("frequency");
    t.add_column("pmf");
    for (long m = 1; m <= a.n; ++m) {
      const std::uint64_t cnt = m < static_cast<long>(g.counts.size()) ? g.counts[m] : 0;
      t.add_row({std::to_string(m), std::to_string(cnt), decimal(g.frequency(m)),
                 decimal(lagrangian_pmf(spec, m))});
    }
    if (g.censored > 0) diag << g.censored << " of " << g.trials << " trials reached the node cap\n";
    return t;
  }
  if (a.kind == "omm") {
    const auto res = omm_estimate(psi, a.n);
    if (const auto* cert = std::get_if<DecayCertificate>(&res)) {
      Table t;
      t.add_column("n");
      t.add_column("scaled");
      t.add_column("decreasing", true);
      for (std::size_t i = 0; i < cert->n.size(); ++i)
        t.add_row({std::to_string(cert->n[i]), decimal(cert->scaled[i]), cert->decreasing ? "yes" : "no"});
      return t;
    }
    const Rational A = lagrange_invert(plain_series(psi, n), n)[n];
    return estimate_table("omm", a.n, std::get<Estimate>(res), LogNumber::from_rational(A), A.get_str());
  }
  if (a.kind == "func") {
    if (a.h.empty()) throw UsageError("lagrange --kind func needs --h");
    const Family H = family_of(a.h, c);
    const Estimate e = func_asym(H, psi, a.n);
    const Rational x = extended_coeff(plain_series(H, n), plain_series(psi, n), n);
    return estimate_table("func", a.n, e, LogNumber::from_rational(x), x.get_str());
  }
  // power and scaled: COEFF_n(g^q).
  long q = a.q;
  Estimate e;
  if (a.kind == "scaled") {
    q = std::lround(a.alpha * a.n + a.beta * std::sqrt(static_cast<double>(a.n)));
    e = power_asym_scaled(psi, q, a.n, a.alpha, a.beta);
  } else {
    e = power_asym(psi, q, a.n);
  }
  if (q < 1) throw Error(ErrorCode::DomainError, "lagrange", "q must be >= 1");
  const Series g = lagrange_invert(plain_series(psi, n), n);
  const Rational x = pow(g, static_cast<int>(q))[n];
  return estimate_table(a.kind, a.n, e, LogNumber::from_rational(x), x.get_str());
}

// ---- diag -------------------------------------------------------------------

struct DiagArgs {
  std::string kind = "gaussian";
  std::string family = "exp";
  std::vector<double> t{10.0, 100.0, 1000.0};
  std::vector<long> n{10, 100, 1000};
  double width = kPi;
};

Table diag_verb(const DiagArgs& a, const Config& c) {
  const Family fam = family_of(a.family, c);
  Table t;
  if (a.kind == "gaussian") {
    QuadratureOptions qo;
    qo.tol = c.quad_tol;
    t.add_column("t");
    t.add_column("S_t");
    t.add_column("sg_integral");
    for (double x : a.t) t.add_row({decimal(x), decimal(local_clt_sup(fam, x)), decimal(strong_gaussian_integral(fam, x, qo))});
  } else if (a.kind == "cut") {
    t.add_column("t");
    t.add_column("h");
    t.add_column("major_sup");
    t.add_column("minor_sup_scaled");
    for (double x : a.t) {
      const CutDiagnostics d = cut_diagnostics(fam, x, a.width);
      t.add_row({decimal(x), decimal(a.width), decimal(d.major_sup), decimal(d.minor_sup_scaled)});
    }
  } else {
    SolveOptions so;
    t.add_column("n");
    t.add_column("t_n");
    t.add_column("log_f");
    t.add_column("m_t");
    t.add_column("var_t");
    for (long m : a.n) {
      so.tol_value = c.root_tol * std::max(1.0, static_cast<double>(m));
      const SaddlePoint p = saddle_solve(fam, static_cast<double>(m), so);
      t.add_row({std::to_string(m), decimal(p.t_n), decimal(p.log_f), decimal(p.m_t), decimal(p.var_t)});
    }
  }
  return t;
}

int trunc_default(std::ostream& err) {
  const char* env = std::getenv("KF_TRUNC");
  if (!env || !*env) return kDefaultTruncation;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > kMaxTruncation) {
    err << "warning: ignoring KF_TRUNC=" << env << " (expected 1.." << kMaxTruncation << ")\n";
    return kDefaultTruncation;
  }
  return static_cast<int>(v);
}

std::string render(const Table& t, const std::string& out) {
  if (out == "csv") return emit_csv(t);
  if (out == "jsonl") return emit_jsonl(t);
  return emit_table(t);
}

constexpr const char* kFooter = R"(Family specs:
  exp | bernoulli | binom:N | geom | negbinom:N | poly:a0,a1,... | bell | P | Q |
  Pab:a,b | Wab:a,b | expof:<spec> | canprod:b1,b2,... | setsoflists | polylog:p,eps

Columns (fixed order):
  coeff     method,n,value,ln,exact,ratio        ratio = exact/estimate
  family    family,t,stat,value,ln
  largepow  psi,n,k,regime,value,ln,exact,exact_value,ratio
  lagrange  kind,n,value,ln,exact,exact_value,ratio   (sample: n,count,frequency,pmf)
  diag      gaussian: t,S_t,sg_integral   cut: t,h,major_sup,minor_sup_scaled
            saddle: n,t_n,log_f,m_t,var_t
Decimals carry 12 significant digits and are blank when |ln| > 700; ln=<x> is
the natural log of the magnitude.

Exit codes: 0 success, 1 failing selftest, 2 usage error, 3 domain error.)";

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khinchin families: coefficient asymptotics and exact oracles", "kf"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Config cfg;
  cfg.trunc = trunc_default(err);
  app.add_option("--trunc", cfg.trunc, "Coefficient truncation (env KF_TRUNC)")
      ->check(CLI::Range(1, kMaxTruncation));
  app.add_option("--tol", cfg.root_tol, "Relative root tolerance")->check(CLI::PositiveNumber);
  app.add_option("--quad-tol", cfg.quad_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"table", "csv", "jsonl"}));
  app.add_option("--seed", cfg.seed, "Sampler seed");

  auto* coeff = app.add_subcommand("coeff", "Exact and asymptotic coefficients a_n");
  CoeffArgs ca;
  coeff->add_option("--family", ca.family, "Family spec")->required();
  coeff->add_option("--n", ca.n, "Index")->required()->check(CLI::NonNegativeNumber);
  coeff->add_option("--method", ca.methods, "exact,hayman,bd,hr,distinct,ingham,wright,colored,mw")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "hayman", "bd", "hr", "distinct", "ingham", "wright", "colored", "mw"}));
  coeff->add_option("--a", ca.a, "Ingham modulus");
  coeff->add_option("--b", ca.b, "Ingham residue, colored order");

  auto* fam = app.add_subcommand("family", "Statistics of X_t");
  FamilyArgs fa;
  fam->add_option("--family", fa.family, "Family spec")->required();
  fam->add_option("--t", fa.t, "Radius")->required()->check(CLI::NonNegativeNumber);
  fam->add_option("--stats", fa.stats, "Comma list")->delimiter(',')->check(CLI::IsMember(kStats));

  auto* lp = app.add_subcommand("largepow", "COEFF_k(h psi^n)");
  LargePowArgs la;
  lp->set_help_flag("--help", "Print this help message and exit");  // --h is the prefactor
  lp->add_option("--psi", la.psi, "Family spec")->required();
  lp->add_option("--h", la.h, "Prefactor family spec");
  lp->add_option("--n", la.n, "Power")->required()->check(CLI::PositiveNumber);
  lp->add_option("--k", la.k, "Coefficient index")->required()->check(CLI::NonNegativeNumber);
  lp->add_option("--regime", la.regime, "auto or a regime name")->check(CLI::IsMember(kRegimes));
  lp->add_option("--A", la.A, "Comparable band lower end");
  lp->add_option("--B", la.B, "Comparable band upper end");
  lp->add_option("--L", la.L, "Limit ratio");
  lp->add_option("--omega", la.omega, "Offset (k - nL) / sqrt(n)");
  lp->add_option("--J", la.J, "Refinement order")->check(CLI::Range(1, 64));
  lp->add_flag("--no-exact", la.no_exact, "Skip the exact coefficient");

  auto* lg = app.add_subcommand("lagrange", "Trees, powers of g, Lagrangian laws");
  LagrangeArgs ga;
  lg->set_help_flag("--help", "Print this help message and exit");
  lg->add_option("--kind", ga.kind, "omm,power,scaled,func,borel,poisson,general,sample")
      ->check(CLI::IsMember(kLagrangeKinds));
  lg->add_option("--psi", ga.psi, "Offspring family spec");
  lg->add_option("--h", ga.h, "H for --kind func");
  lg->add_option("--family", ga.family, "Initial family spec (general, sample)");
  lg->add_option("--n", ga.n, "Index (sample: largest index shown)")->required()->check(CLI::PositiveNumber);
  lg->add_option("--q", ga.q, "Power of g")->check(CLI::PositiveNumber);
  lg->add_option("--j", ga.j, "Borel-Tanner initial size")->check(CLI::PositiveNumber);
  lg->add_option("--t", ga.t, "Offspring tilt")->check(CLI::PositiveNumber);
  lg->add_option("--s", ga.s, "Initial tilt")->check(CLI::PositiveNumber);
  lg->add_option("--alpha", ga.alpha, "q = alpha n + beta sqrt(n)");
  lg->add_option("--beta", ga.beta);
  lg->add_option("--trials", ga.trials, "Sampler trials")->check(CLI::PositiveNumber);

  auto* dg = app.add_subcommand("diag", "Gaussianity, cut and saddle diagnostics");
  DiagArgs da;
  dg->add_option("--kind", da.kind, "gaussian,cut,saddle")->check(CLI::IsMember({"gaussian", "cut", "saddle"}));
  dg->add_option("--family", da.family, "Family spec");
  dg->add_option("--t", da.t, "Comma list of radii")->delimiter(',')->check(CLI::PositiveNumber);
  dg->add_option("--n", da.n, "Comma list of indices (saddle)")->delimiter(',')->check(CLI::PositiveNumber);
  dg->add_option("--width", da.width, "Cut half-width h")->check(CLI::Range(0.0, kPi));

  auto* st = app.add_subcommand("selftest", "Run the acceptance criteria");
  std::vector<int> only;
  st->add_option("--only", only, "Comma list of criterion ids")
      ->delimiter(',')
      ->check(CLI::Range(1, selftest::kCriterionCount));

  // Global options may appear before or after the verb.
  for (auto* sub : {coeff, fam, lp, lg, dg, st}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (st->parsed()) {
      bool all = true;
      std::vector<int> ids = only;
      if (ids.empty())
        for (int i = 1; i <= selftest::kCriterionCount; ++i) ids.push_back(i);
      for (int id : ids) {
        const auto r = selftest::run_criterion(id);
        all = all && r.pass;
        out << selftest::format(r) << '\n' << std::flush;
      }
      return all ? kExitOk : kExitFailure;
    }
    Table t;
    if (coeff->parsed()) t = coeff_verb(ca, cfg);
    else if (fam->parsed()) t = family_verb(fa, cfg);
    else if (lp->parsed()) t = largepow_verb(la, cfg);
    else if (lg->parsed()) t = lagrange_verb(ga, cfg, err);
    else t = diag_verb(da, cfg);
    out << render(t, cfg.out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace kf::cli
