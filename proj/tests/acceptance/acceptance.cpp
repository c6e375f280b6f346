#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../support.hpp"
#include "umcert/certify.hpp"
#include "umcert/oracle.hpp"
#include "umcert/report.hpp"
#include "umcert/transforms.hpp"

using namespace umcert;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;  // 0 means no runtime limit
  std::function<Outcome()> body;
};

int workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ------------------------------------------------------------------ AC1

Outcome truncation_identities() {
  Integer prev = truncation(1).q;
  for (int k = 2; k <= 8; ++k) {
    const TruncationRecord r = truncation(k);
    if (r.q != ipow(prev, static_cast<unsigned long>(k)))
      return {false, "height recurrence broken at k=" + std::to_string(k)};
    if (!eq2_check(k).pass) return {false, "second-order bound fails at k=" + std::to_string(k)};
    prev = r.q;
  }
  return {true, "k=2..8 exact, zero tolerance"};
}

// ------------------------------------------------------------------ AC2

Outcome transform_bounds() {
  testing::Gen g(20240611);
  long violations = 0;
  long identities = 0;
  for (int t = 0; t < 10000; ++t) {
    const int m = static_cast<int>(g.integer(1, 6));
    const IntPolynomial p = g.polynomial(m, 1000);
    const Integer a = g.nonzero(-1000, 1000);
    const Integer b = g.nonzero(-1000, 1000);
    const TransformHeightReport r = lemma1_check(p, a, b);
    if (!r.pass_i || !r.pass_ii) ++violations;
    const Rational am = rpow(Rational(a), m);
    const Rational bm = rpow(Rational(b), m);
    for (int i = 0; i < m + 2; ++i) {
      const Rational x = g.rational(1000, 1000);
      if (r.q1(x) != am * p(Rational(b) * x / Rational(a))) ++violations;
      if (r.q2(x) != bm * p(x - Rational(a) / Rational(b))) ++violations;
      identities += 2;
    }
  }
  return {violations == 0, "10000 triples, " + std::to_string(identities) + " point identities, " +
                               std::to_string(violations) + " violations"};
}

// ------------------------------------------------------------------ AC3

Outcome separation_bound() {
  const SeparationSweep s = separation_sweep(2, Integer(20), workers());
  std::ostringstream d;
  d << s.numbers << " numbers, " << s.close_pairs << " pairs refined, " << s.violations.size()
    << " violations";
  return {s.violations.empty(), d.str()};
}

// ------------------------------------------------------------------ AC4

Outcome certificate_chains() {
  const Rational tolerance(3, 10);
  std::ostringstream d;
  bool pass = true;
  for (const char* name : {"sqrt2", "cbrt2", "golden"}) {
    const RealAlgebraic a = alpha_preset(name);
    const int m = a.degree();
    for (const OpKind kind : {OpKind::product, OpKind::sum}) {
      CertifyOptions o;
      o.limits.k_max = 6;
      o.jobs = workers();
      const auto records = certify_chain(a, kind, o);
      Rational worst = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::string where = std::string(name) + "/" + std::string(to_string(kind)) + " k=" +
                                  std::to_string(r.k);
        if (r.eq3.verdict != Verdict::pass || r.eq5 != Verdict::pass) {
          pass = false;
          d << where << " eq3/eq5 not pass; ";
        }
        const Rational dev = abs(r.omega_k - Rational(r.k + 1, m));
        if (dev > worst) worst = dev;
        if (r.k >= 2 && dev > tolerance) {
          pass = false;
          d << where << " omega off by " << fixed(dev, 4) << "; ";
        }
        if (r.k >= 3 && !(r.omega.lo() > records[i - 1].omega.hi())) {
          pass = false;
          d << where << " omega not increasing; ";
        }
        for (const auto& e : r.eq9) {
          const bool in_regime = r.k >= 2 * e.n;
          const bool definite = e.check.verdict == Verdict::pass || e.check.verdict == Verdict::fail;
          if (in_regime && !definite) {
            pass = false;
            d << where << " " << e.tag << " n=" << e.n << " undecided; ";
          }
        }
      }
      d << name << "/" << to_string(kind) << " max|omega-(k+1)/m|=" << fixed(worst, 4) << "; ";
    }
  }
  d << "tolerance 0.3";
  return {pass, d.str()};
}

// ------------------------------------------------------------------ AC5

Outcome final_bound_sweep() {
  const RealAlgebraic a = alpha_preset("sqrt2");
  const Integer h(500);
  const ExceptionScan one = exception_scan(a, OpKind::product, 1, h, 8, 1);
  const ExceptionScan many = exception_scan(a, OpKind::product, 1, h, 8, workers());
  const auto j1 = report::exception_json(a, OpKind::product, 1, h, one, nullptr).dump(2);
  const auto j2 = report::exception_json(a, OpKind::product, 1, h, many, nullptr).dump(2);
  const fs::path golden = fs::path(ACCEPTANCE_OUT) / "ac5_exceptions.json";
  fs::create_directories(golden.parent_path());
  std::ofstream(golden, std::ios::binary) << j1 << "\n";

  // Beyond height 500 with q <= 500 every p/q has |p/q| > 1, while the
  // target is below 1/5, so the distance exceeds 4/5 > f/2.
  const Enclosure t = target_source(a, OpKind::product)(0);
  const bool far_tail = Rational(1) - t.hi() > one.f / 2;

  std::ostringstream d;
  d << one.checked << " reduced p/q with |p|,q <= 500, f(2,1)=" << fixed(one.f, 10) << ", "
    << one.exceptions.size() << " exceptions (golden file " << golden.filename().string()
    << "), stable=" << (j1 == j2 ? "yes" : "no") << ", |p|>500 covered=" << (far_tail ? "yes" : "no");
  const bool f_ok = abs(one.f - Rational(102, 1000)) < Rational(1, 1000);
  return {j1 == j2 && far_tail && f_ok, d.str()};
}

// ------------------------------------------------------------------ AC6

Outcome growth_and_sbeta() {
  std::ostringstream d;
  bool pass = true;
  for (int base = 2; base <= 10; ++base) {
    std::vector<Integer> q;
    for (int k = 1; k <= 7; ++k)
      q.push_back(ipow(Integer(base), factorial(static_cast<unsigned long>(k)).get_ui()));
    if (!growth_check(q, 1, 1).pass) {
      pass = false;
      d << "growth fails base " << base << "; ";
    }
    const auto digits = DigitLiouville::ones(base);
    const auto src = digit_source(digits);
    // The sequence alpha_{k+1}, checked at index k.
    for (int k = 1; k <= 5; ++k) {
      const auto t = digit_truncation(digits, k + 1);
      bool ok = false;
      try {
        ok = s_beta_check(t.p, t.q, k, src);
      } catch (const InconclusiveError&) {
        ok = false;
      }
      if (!ok) {
        pass = false;
        d << "S_beta fails base " << base << " k=" << k << "; ";
      }
    }
  }
  // The unshifted truncations miss by the next digit; shown for reference.
  int canonical = 0;
  const auto l = DigitLiouville::ones(10);
  for (int k = 1; k <= 5; ++k) {
    const auto t = digit_truncation(l, k);
    if (s_beta_check(t.p, t.q, k, digit_source(l))) ++canonical;
  }
  d << "bases 2..10, growth k<=7 with C1=C2=1, shifted sequence k<=5; unshifted base 10 passes "
    << canonical << "/5";
  return {pass, d.str()};
}

// ------------------------------------------------------------------ AC7

Outcome decomposition() {
  const auto digits = DigitLiouville::alt12();
  std::ostringstream d;
  bool pass = true;
  for (int m : {2, 3}) {
    const DecompositionReport rep = corollary_decompose(digits, m);
    std::vector<Integer> c(static_cast<std::size_t>(m) + 1, Integer(0));
    c[0] = -1;
    c[static_cast<std::size_t>(m)] = Integer(1) << (m - 1);  // 2^(m-1) x^m - 1
    const IntPolynomial left(c);
    c[0] = m % 2 == 0 ? -1 : 1;
    const IntPolynomial right(c);
    const bool polys = rep.left.algebraic_part.minpoly() == left &&
                       rep.right.algebraic_part.minpoly() == right;
    bool recombine = true;
    for (const auto& lv : rep.levels) recombine = recombine && lv.recombines;
    if (!rep.pass || !polys || !recombine) pass = false;
    d << "m=" << m << " parts [" << format_coeffs(rep.left.algebraic_part.minpoly()) << "] ["
      << format_coeffs(rep.right.algebraic_part.minpoly()) << "], " << rep.steps.size() << " steps, "
      << rep.levels.size() << " levels " << (rep.pass ? "ok" : "FAILED") << "; ";
  }
  return {pass, d.str()};
}

// ------------------------------------------------------------------ AC8

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UMCERT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::path(ACCEPTANCE_OUT) / "ac8";
  fs::remove_all(root);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"certify", "certify --alpha sqrt2 --kind product --k-max 6"},
      {"certify", "certify --alpha cbrt2 --kind sum --k-max 6"},
      {"oracle", "oracle --alpha sqrt2 --kind product --n 1 --h-max 500"}};
  std::size_t compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<fs::path> dirs;
    for (const char* run : {"jobs1_a", "jobs1_b", "jobs8"}) {
      const fs::path dir = root / (std::to_string(i) + "_" + run);
      const std::string jobs = std::string(run) == "jobs8" ? " --jobs 8" : " --jobs 1";
      const int rc = run_cli(commands[i].second + jobs + " --out " + dir.string());
      if (rc != 0) return {false, commands[i].second + " exited " + std::to_string(rc)};
      dirs.push_back(dir);
    }
    for (const char* ext : {".json", ".csv"}) {
      const std::string name = commands[i].first + ext;
      const std::string ref = slurp(dirs[0] / name);
      if (ref.empty()) return {false, "missing " + name};
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        if (slurp(dirs[k] / name) != ref) return {false, name + " differs for " + commands[i].second};
        ++compared;
      }
    }
  }
  return {true, std::to_string(compared) + " file pairs byte-identical (repeat run, --jobs 1 vs 8)"};
}

// ------------------------------------------------------------------ AC9

Outcome exponent_signature() {
  const Target l{liouville_source(), std::nullopt};
  const std::vector<Integer> ladder = {Integer(10), Integer(100), Integer(1000000)};
  const auto rows = exponent_scan(l, 1, ladder, 12, workers());
  std::ostringstream d;
  bool pass = rows.size() == 3;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool ok = r.lower_estimate >= static_cast<long>(i + 1);
    pass = pass && ok;
    d << "H<=" << to_string(r.height_ceiling) << ": witness " << to_string(r.witness.as_rational())
      << " w_est=" << fixed(r.lower_estimate, 3) << " [" << fixed(r.bracket_lo, 4) << ", "
      << fixed(r.bracket_hi, 4) << "] >= " << i + 1 << (ok ? "" : " NO") << "; ";
  }
  return {pass, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "truncation identities", 10, truncation_identities},
      {"AC2", "transform height bounds", 60, transform_bounds},
      {"AC3", "separation bound, degree <= 2, height <= 20", 600, separation_bound},
      {"AC4", "certificate chains, k <= 6", 300, certificate_chains},
      {"AC5", "final-bound oracle sweep, q <= 500", 300, final_bound_sweep},
      {"AC6", "growth and S_beta hypotheses", 30, growth_and_sbeta},
      {"AC7", "two-summand decomposition", 30, decomposition},
      {"AC8", "determinism", 0, determinism},
      {"AC9", "exponent signature of L", 0, exponent_signature},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    char timing[64];
    if (c.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.1fs < %.0fs", secs, c.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.title << " (" << timing
              << (in_time ? "" : ", over limit") << "): " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
