#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "umcert/certify.hpp"
#include "umcert/liouville.hpp"
#include "umcert/oracle.hpp"
#include "umcert/report.hpp"

namespace fs = std::filesystem;
using namespace umcert;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

struct RunConfig {
  int k_max = kDefaultKMax;
  int refine_cap = 12;
  std::uint64_t candidate_cap = 10'000'000;
  std::string out = ".";
  std::vector<std::string> emit{"json", "csv"};
  int jobs = 1;
  bool allow_large_k = false;
  bool strict = false;

  TruncationLimits limits() const { return {k_max, allow_large_k}; }
  bool wants(const std::string& kind) const {
    return std::find(emit.begin(), emit.end(), kind) != emit.end();
  }
};

struct AlphaArgs {
  std::string alpha;
  std::string minpoly;
  long root_index = -1;
};

void check_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error("output directory '" + dir + "' cannot be created");
  const fs::path probe = fs::path(dir) / ".umcert_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw Error("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
  const fs::path path = fs::path(cfg.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << body;
}

void emit(const RunConfig& cfg, const std::string& command, const report::Json& json,
          const std::string& csv) {
  if (cfg.wants("json")) write_file(cfg, command + ".json", json.dump(2) + "\n");
  if (cfg.wants("csv")) write_file(cfg, command + ".csv", csv);
}

bool is_preset(const std::string& name) {
  for (const auto& p : alpha_preset_names())
    if (p == name) return true;
  return false;
}

// A preset name, or ascending coefficients selecting the largest real root
// unless --root-index says otherwise.
RealAlgebraic resolve_alpha(const AlphaArgs& a) {
  if (!a.alpha.empty() && !a.minpoly.empty()) throw Error("give either --alpha or --minpoly");
  if (a.alpha.empty() && a.minpoly.empty()) throw Error("--alpha or --minpoly is required");
  if (!a.alpha.empty() && is_preset(a.alpha)) {
    if (a.root_index >= 0) throw Error("--root-index does not apply to presets");
    return alpha_preset(a.alpha);
  }
  const IntPolynomial p = parse_coeffs(a.alpha.empty() ? a.minpoly : a.alpha);
  if (p.degree() < 1) throw Error("minimal polynomial must have degree >= 1");
  const std::size_t roots = isolate_real_roots(p).size();
  if (roots == 0) throw Error("polynomial has no real roots");
  std::size_t index = roots - 1;
  if (a.root_index >= 0) {
    if (static_cast<std::size_t>(a.root_index) >= roots)
      throw Error("root index " + std::to_string(a.root_index) + " out of range (" +
                  std::to_string(roots) + " real roots)");
    index = static_cast<std::size_t>(a.root_index);
  }
  return RealAlgebraic::from_root_index(p, index);
}

std::vector<Integer> parse_ladder(const std::string& text) {
  std::vector<Integer> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_integer(item));
  }
  return out;
}

int run_truncations(const RunConfig& cfg) {
  const TruncationLimits limits = cfg.limits();
  limits.validate_config();
  std::vector<report::TruncationRow> rows;
  bool pass = true;
  for (int k = 1; k <= cfg.k_max; ++k) {
    report::TruncationRow row{truncation(k, limits), eq2_check(k, limits)};
    pass = pass && row.eq2.pass;
    rows.push_back(std::move(row));
  }
  emit(cfg, "truncations", report::truncations_json(rows), report::truncations_csv(rows));
  return pass ? kOk : kFail;
}

int run_certify(const RunConfig& cfg, const AlphaArgs& a, const std::string& kind_text) {
  const TruncationLimits limits = cfg.limits();
  limits.validate_config();
  const RealAlgebraic alpha = resolve_alpha(a);
  const OpKind kind = parse_op_kind(kind_text);
  CertifyOptions options;
  options.limits = limits;
  options.refine_cap = cfg.refine_cap;
  options.jobs = cfg.jobs;
  const auto records = certify_chain(alpha, kind, options);
  const auto summary = report::summarize(records, cfg.strict);
  emit(cfg, "certify", report::certificate_json(alpha, kind, records, summary),
       report::certificate_csv(records));
  return summary.exit_status;
}

int run_oracle(const RunConfig& cfg, const AlphaArgs& a, const std::string& kind_text, int n,
               const std::string& h_text) {
  const RealAlgebraic alpha = resolve_alpha(a);
  const OpKind kind = parse_op_kind(kind_text);
  const Integer h_max = parse_integer(h_text);
  const ExceptionScan scan = exception_scan(alpha, kind, n, h_max, cfg.refine_cap, cfg.jobs);

  EnumerationSpec spec;
  spec.degree = n;
  spec.height_max = h_max;
  spec.candidate_cap = cfg.candidate_cap;
  const Approximant best =
      best_approximant(Target{target_source(alpha, kind), std::nullopt}, spec, cfg.refine_cap, cfg.jobs);

  emit(cfg, "oracle", report::exception_json(alpha, kind, n, h_max, scan, &best),
       report::exception_csv(scan));
  for (const auto& e : scan.exceptions)
    if (e.result.verdict == Verdict::inconclusive) return kInconclusive;
  return kOk;
}

int run_scan(const RunConfig& cfg, const std::string& target_name, const AlphaArgs& a, int n,
             const std::string& ladder_text) {
  Target target;
  if (target_name == "liouville") {
    target.source = liouville_source();
  } else if (target_name == "product" || target_name == "sum") {
    target.source = target_source(resolve_alpha(a), parse_op_kind(target_name));
  } else if (target_name == "algebraic") {
    const RealAlgebraic alpha = resolve_alpha(a);
    target.source = algebraic_source(alpha);
    target.exact = alpha;
  } else {
    throw Error("unknown target '" + target_name + "' (expected liouville, product, sum or algebraic)");
  }
  const auto ladder = parse_ladder(ladder_text);
  const auto rows = exponent_scan(target, n, ladder, cfg.refine_cap, cfg.jobs);
  emit(cfg, "scan", report::scan_json(target_name, rows), report::scan_csv(rows));
  return kOk;
}

int run_probe(const RunConfig& cfg, long d, const std::string& h_text, const std::string& eps_text,
              std::size_t limit) {
  const auto rep = schmidt_probe(d, parse_integer(h_text), parse_rational(eps_text), limit, cfg.jobs);
  emit(cfg, "probe", report::probe_json(rep), report::probe_csv(rep));
  return kOk;
}

int run_decompose(const RunConfig& cfg, const std::string& digits, int m, int levels) {
  const TruncationLimits limits = cfg.limits();
  limits.validate_config();
  const DigitLiouville d = fs::is_regular_file(digits) ? DigitLiouville::load(digits)
                                                        : DigitLiouville::preset(digits);
  const auto rep = corollary_decompose(d, m, limits, levels);
  emit(cfg, "decompose", report::decompose_json(rep), report::decompose_csv(rep));
  return rep.pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for approximations to alpha*L and alpha+L"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--k-max", cfg.k_max, "largest truncation index")->capture_default_str();
  app.add_option("--refine-cap", cfg.refine_cap, "refinement levels before giving up")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--candidate-cap", cfg.candidate_cap, "enumeration candidate limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--emit", cfg.emit, "output formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--allow-large-k", cfg.allow_large_k, "permit k above the default limit");
  app.add_flag("--strict", cfg.strict, "count every exponent reading toward the exit status");

  AlphaArgs alpha;
  std::string kind = "product";
  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", alpha.alpha, "preset name or ascending coefficients");
    sub->add_option("--minpoly", alpha.minpoly, "ascending coefficients c0,c1,...,cm");
    sub->add_option("--root-index", alpha.root_index, "index into the ascending real roots");
  };

  auto* truncations = app.add_subcommand("truncations", "table of truncations of L");

  auto* certify = app.add_subcommand("certify", "certificate chain for gamma_k");
  add_alpha(certify);
  certify->add_option("--kind", kind, "product or sum")->capture_default_str();

  int n = 1;
  std::string h_max = "500";
  auto* oracle = app.add_subcommand("oracle", "exceptions to the final bound");
  add_alpha(oracle);
  oracle->add_option("--kind", kind, "product or sum")->capture_default_str();
  oracle->add_option("--n", n, "approximant degree")->check(CLI::PositiveNumber);
  oracle->add_option("--h-max", h_max, "height bound")->capture_default_str();

  std::string target = "liouville";
  std::string ladder = "10,100,1000000";
  auto* scan = app.add_subcommand("scan", "approximation exponent estimates");
  add_alpha(scan);
  scan->add_option("--target", target, "liouville, product, sum or algebraic")->capture_default_str();
  scan->add_option("--n", n, "approximant degree")->check(CLI::PositiveNumber);
  scan->add_option("--ladder", ladder, "increasing height ceilings")->capture_default_str();

  long d = 2;
  std::string epsilon = "0";
  std::size_t limit = 10;
  auto* probe = app.add_subcommand("probe", "pair distances in a real quadratic field");
  probe->add_option("--d", d, "squarefree d > 1")->capture_default_str();
  probe->add_option("--h-max", h_max, "height bound")->capture_default_str();
  probe->add_option("--epsilon", epsilon, "exponent excess")->capture_default_str();
  probe->add_option("--limit", limit, "rows to keep")->capture_default_str();

  std::string digits = "alt12";
  int m = 2;
  int levels = 6;
  auto* decompose = app.add_subcommand("decompose", "split a digit number into two summands");
  decompose->add_option("--digits", digits, "digit file or preset name")->capture_default_str();
  decompose->add_option("--m", m, "degree of the algebraic parts")->check(CLI::PositiveNumber);
  decompose->add_option("--levels", levels, "precision levels to check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    check_output_dir(cfg.out);
    if (*truncations) return run_truncations(cfg);
    if (*certify) return run_certify(cfg, alpha, kind);
    if (*oracle) return run_oracle(cfg, alpha, kind, n, h_max);
    if (*scan) return run_scan(cfg, target, alpha, n, ladder);
    if (*probe) return run_probe(cfg, d, h_max, epsilon, limit);
    if (*decompose) return run_decompose(cfg, digits, m, levels);
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
