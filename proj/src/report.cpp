#include "umcert/report.hpp"

#include <sstream>

namespace umcert::report {

namespace {

Json coeffs_json(const IntPolynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
  return arr;
}

// Exact sides for a failed or undecided check, summaries always.
Json check_json(const Check& c) {
  Json j;
  j["verdict"] = std::string(to_string(c.verdict));
  if (c.verdict == Verdict::outside_regime) return j;
  j["lhs_log10"] = {log10_summary(c.lhs.lo()), log10_summary(c.lhs.hi())};
  j["rhs_log10"] = {log10_summary(c.rhs.lo()), log10_summary(c.rhs.hi())};
  if (c.verdict != Verdict::pass) {
    j["lhs"] = enclosure_json(c.lhs);
    j["rhs"] = enclosure_json(c.rhs);
  }
  return j;
}

Verdict merge(Verdict acc, Verdict v) {
  if (v == Verdict::outside_regime) return acc;
  if (acc == Verdict::fail || v == Verdict::fail) return Verdict::fail;
  if (acc == Verdict::inconclusive || v == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

std::string verdict_str(Verdict v) { return std::string(to_string(v)); }

std::string eq9_cell(const CertificateRecord& r, const std::string& tag) {
  std::string out;
  for (const auto& e : r.eq9) {
    if (e.tag != tag) continue;
    if (!out.empty()) out += ';';
    out += "n" + std::to_string(e.n) + ":" + verdict_str(e.check.verdict);
  }
  return out.empty() ? "none" : out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string log10_summary(const Rational& x) {
  if (x == 0) return "-inf";
  return fixed(log10_enclosure(abs(x)).midpoint(), 6);
}

std::string log10_summary(const Integer& n) { return log10_summary(Rational(n)); }

Json enclosure_json(const Enclosure& e) { return Json::array({to_string(e.lo()), to_string(e.hi())}); }

Json algebraic_json(const RealAlgebraic& a) {
  Json j;
  j["minpoly"] = coeffs_json(a.minpoly());
  j["root_index"] = a.root_index();
  j["root_interval"] = enclosure_json(a.isolating());
  return j;
}

Json truncations_json(const std::vector<TruncationRow>& rows, std::size_t exact_digit_limit) {
  Json recs = Json::array();
  bool all_pass = true;
  for (const auto& row : rows) {
    const TruncationRecord& r = row.record;
    Json j;
    j["k"] = r.k;
    j["p"] = to_string(r.p);
    j["q"] = to_string(r.q);
    j["alpha"] = to_string(r.alpha);
    const bool exact = decimal_digits(r.tail_hi.get_den()) <= exact_digit_limit;
    j["tail_exact"] = exact;
    j["tail"] = enclosure_json(exact ? r.tail() : liouville_tail_outer(r.k, 30));
    j["eq2_rhs"] = to_string(row.eq2.rhs);
    j["eq2_pass"] = row.eq2.pass;
    all_pass = all_pass && row.eq2.pass;
    recs.push_back(std::move(j));
  }
  Json out;
  out["records"] = std::move(recs);
  out["all_pass"] = all_pass;
  return out;
}

std::string truncations_csv(const std::vector<TruncationRow>& rows) {
  std::ostringstream out;
  out << "k,q_digits,p_mod_10,tail_lo_exp10,eq2_rhs_exp10,eq2\n";
  for (const auto& row : rows) {
    const TruncationRecord& r = row.record;
    const Integer last = r.p % 10;
    out << r.k << ',' << decimal_digits(r.q) << ',' << to_string(last) << ','
        << log10_summary(r.tail_lo) << ',' << log10_summary(row.eq2.rhs) << ','
        << (row.eq2.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

CertifySummary summarize(const std::vector<CertificateRecord>& records, bool strict) {
  CertifySummary s;
  int max_n = 0;
  for (const auto& r : records) {
    s.eq3 = merge(s.eq3, r.eq3.verdict);
    s.eq4_literal = merge(s.eq4_literal, r.eq4_literal.verdict);
    s.eq4_corrected = merge(s.eq4_corrected, r.eq4_corrected.verdict);
    s.eq5 = merge(s.eq5, r.eq5);
    for (const auto& e : r.eq9) {
      max_n = std::max(max_n, e.n);
      if (e.tag == "literal") s.eq9_literal = merge(s.eq9_literal, e.check.verdict);
      if (e.tag == "grouped") s.eq9_grouped = merge(s.eq9_grouped, e.check.verdict);
      if (e.tag == "derived") s.eq9_derived = merge(s.eq9_derived, e.check.verdict);
    }
  }
  // For each n the derived reading must hold on the last index that is in
  // the asymptotic regime, and on every index after its last failure.
  for (int n = 1; n <= max_n; ++n) {
    Verdict last = Verdict::outside_regime;
    for (const auto& r : records) {
      for (const auto& e : r.eq9) {
        if (e.n == n && e.tag == "derived" && e.check.verdict != Verdict::outside_regime) {
          last = e.check.verdict;
        }
      }
    }
    if (last != Verdict::pass && last != Verdict::outside_regime) s.eq9_derived_eventually = false;
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].k < 2) continue;
    if (records[i - 1].k < 2) continue;
    if (!(records[i].omega.lo() > records[i - 1].omega.hi())) s.omega_increasing = false;
  }

  Verdict counted = merge(merge(s.eq3, s.eq4_corrected), s.eq5);
  if (strict) {
    counted = merge(counted, s.eq9_derived);
    counted = merge(counted, s.eq4_literal);
    counted = merge(counted, s.eq9_literal);
    counted = merge(counted, s.eq9_grouped);
  } else if (!s.eq9_derived_eventually) {
    counted = merge(counted, Verdict::fail);
  }
  s.exit_status = counted == Verdict::pass ? 0 : (counted == Verdict::fail ? 1 : 3);
  return s;
}

Json certificate_json(const RealAlgebraic& alpha, OpKind kind,
                      const std::vector<CertificateRecord>& records, const CertifySummary& s) {
  Json out;
  out["alpha"] = algebraic_json(alpha);
  out["kind"] = std::string(to_string(kind));
  out["degree"] = alpha.degree();
  Json recs = Json::array();
  for (const auto& r : records) {
    Json j;
    j["k"] = r.k;
    j["gamma_k"] = algebraic_json(r.gamma_k);
    j["h_gamma_k"] = to_string(r.h_gamma_k);
    j["h_gamma_next"] = to_string(r.h_gamma_next);
    j["effective_height"] = to_string(r.effective_height);
    j["gap"] = enclosure_json(r.gap);
    j["c_enclosure"] = enclosure_json(r.c);
    j["eq3"] = check_json(r.eq3);
    j["eq4_literal"] = check_json(r.eq4_literal);
    j["eq4_corrected"] = check_json(r.eq4_corrected);
    Json eq5;
    eq5["verdict"] = verdict_str(r.eq5);
    eq5["growth"] = check_json(r.eq5_growth);
    eq5["identity"] = r.eq5_identity;
    eq5["chain"] = check_json(r.eq5_chain);
    j["eq5"] = std::move(eq5);
    Json eq9 = Json::array();
    for (const auto& e : r.eq9) {
      Json v = check_json(e.check);
      v["n"] = e.n;
      v["reading"] = e.tag;
      eq9.push_back(std::move(v));
    }
    j["eq9_variant_results"] = std::move(eq9);
    j["omega_k"] = to_string(r.omega_k);
    j["omega_enclosure"] = enclosure_json(r.omega);
    j["precision_digits"] = r.precision_digits_used;
    recs.push_back(std::move(j));
  }
  out["records"] = std::move(recs);
  Json v;
  v["eq3"] = verdict_str(s.eq3);
  v["eq4_literal"] = verdict_str(s.eq4_literal);
  v["eq4_corrected"] = verdict_str(s.eq4_corrected);
  v["eq5"] = verdict_str(s.eq5);
  v["eq9_literal"] = verdict_str(s.eq9_literal);
  v["eq9_grouped"] = verdict_str(s.eq9_grouped);
  v["eq9_derived"] = verdict_str(s.eq9_derived);
  v["eq9_derived_eventually"] = s.eq9_derived_eventually;
  v["omega_increasing"] = s.omega_increasing;
  v["exit_status"] = s.exit_status;
  out["verdicts"] = std::move(v);
  return out;
}

std::string certificate_csv(const std::vector<CertificateRecord>& records) {
  std::ostringstream out;
  out << "k,H_gamma_k,gap_lo_exp10,eq3,eq4_literal,eq4_corrected,eq5,eq9_literal,eq9_grouped,"
         "eq9_derived,omega_k\n";
  for (const auto& r : records) {
    out << r.k << ',' << scientific(r.h_gamma_k, 6) << ',' << log10_summary(r.gap.lo()) << ','
        << verdict_str(r.eq3.verdict) << ',' << verdict_str(r.eq4_literal.verdict) << ','
        << verdict_str(r.eq4_corrected.verdict) << ',' << verdict_str(r.eq5) << ','
        << eq9_cell(r, "literal") << ',' << eq9_cell(r, "grouped") << ','
        << eq9_cell(r, "derived") << ',' << fixed(r.omega_k, 6) << '\n';
  }
  return out.str();
}

Json exception_json(const RealAlgebraic& alpha, OpKind kind, int n, const Integer& h_max,
                    const ExceptionScan& scan, const Approximant* best) {
  const int m = alpha.degree();
  Json out;
  out["alpha"] = algebraic_json(alpha);
  out["kind"] = std::string(to_string(kind));
  out["n"] = n;
  out["h_max"] = to_string(h_max);
  out["f"] = to_string(scan.f);
  out["bound_exponent"] = 2 * m * m * n + m;
  out["checked"] = scan.checked;
  Json rows = Json::array();
  for (const auto& e : scan.exceptions) {
    Json j;
    j["gamma"] = algebraic_json(e.gamma);
    j["verdict"] = verdict_str(e.result.verdict);
    j["distance"] = enclosure_json(e.result.lhs);
    j["rhs"] = to_string(e.result.rhs);
    j["margin"] = to_string(e.result.margin);
    rows.push_back(std::move(j));
  }
  out["exceptions"] = std::move(rows);
  if (best) {
    Json b;
    b["gamma"] = algebraic_json(best->gamma);
    b["distance"] = enclosure_json(best->distance);
    out["best_approximant"] = std::move(b);
  }
  return out;
}

std::string exception_csv(const ExceptionScan& scan) {
  std::ostringstream out;
  out << "gamma_minpoly,root_index,height,distance_lo,distance_hi,margin\n";
  for (const auto& e : scan.exceptions) {
    out << csv_quote(format_coeffs(e.gamma.minpoly(), ' ')) << ',' << e.gamma.root_index() << ','
        << to_string(e.gamma.height()) << ',' << scientific(e.result.lhs.lo(), 6) << ','
        << scientific(e.result.lhs.hi(), 6) << ',' << scientific(e.result.margin, 6) << '\n';
  }
  return out.str();
}

Json scan_json(const std::string& target_name, const std::vector<ExponentEstimate>& rows) {
  Json out;
  out["target"] = target_name;
  Json arr = Json::array();
  for (const auto& e : rows) {
    Json j;
    j["n"] = e.n;
    j["height_ceiling"] = to_string(e.height_ceiling);
    j["witness"] = algebraic_json(e.witness);
    j["witness_height"] = to_string(e.witness.height());
    j["distance"] = enclosure_json(e.distance);
    j["w_est"] = to_string(e.lower_estimate);
    j["w_bracket"] = {to_string(e.bracket_lo), to_string(e.bracket_hi)};
    arr.push_back(std::move(j));
  }
  out["estimates"] = std::move(arr);
  return out;
}

std::string scan_csv(const std::vector<ExponentEstimate>& rows) {
  std::ostringstream out;
  out << "gamma_minpoly,root_index,height,distance_lo,distance_hi,margin,height_ceiling,w_est,"
         "w_bracket_lo,w_bracket_hi\n";
  for (const auto& e : rows) {
    out << csv_quote(format_coeffs(e.witness.minpoly(), ' ')) << ',' << e.witness.root_index()
        << ',' << to_string(e.witness.height()) << ',' << scientific(e.distance.lo(), 6) << ','
        << scientific(e.distance.hi(), 6) << ',' << fixed(e.lower_estimate - e.n, 3) << ','
        << to_string(e.height_ceiling) << ',' << fixed(e.lower_estimate, 3) << ','
        << fixed(e.bracket_lo, 4) << ',' << fixed(e.bracket_hi, 4) << '\n';
  }
  return out.str();
}

Json probe_json(const SchmidtReport& rep) {
  Json out;
  out["d"] = rep.d;
  out["h_max"] = to_string(rep.h_max);
  out["epsilon"] = to_string(rep.epsilon);
  out["elements"] = rep.elements;
  out["pairs"] = rep.pairs;
  out["note"] = "exploratory statistic; not a verification of the conjecture";
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json j;
    j["a"] = algebraic_json(r.a);
    j["b"] = algebraic_json(r.b);
    j["distance"] = enclosure_json(round_outward(r.distance, 30));
    j["h"] = to_string(r.h);
    j["ratio"] = enclosure_json(round_outward(r.ratio, 30));
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  if (!rep.rows.empty()) out["minimum_ratio_lo"] = to_string(round_outward(rep.rows.front().ratio, 30).lo());
  return out;
}

std::string probe_csv(const SchmidtReport& rep) {
  std::ostringstream out;
  out << "a_minpoly,a_root_index,b_minpoly,b_root_index,h,distance_lo,ratio_lo,ratio_hi\n";
  for (const auto& r : rep.rows) {
    out << csv_quote(format_coeffs(r.a.minpoly(), ' ')) << ',' << r.a.root_index() << ','
        << csv_quote(format_coeffs(r.b.minpoly(), ' ')) << ',' << r.b.root_index() << ','
        << to_string(r.h) << ',' << scientific(r.distance.lo(), 6) << ','
        << scientific(r.ratio.lo(), 6) << ',' << scientific(r.ratio.hi(), 6) << '\n';
  }
  return out.str();
}

Json decompose_json(const DecompositionReport& rep) {
  Json out;
  out["m"] = rep.m;
  out["digits"] = rep.digits_name;
  out["root"] = algebraic_json(rep.root);
  auto summand = [](const Summand& s) {
    Json j;
    j["sign"] = s.sign;
    j["weight"] = to_string(s.weight);
    j["algebraic_part"] = algebraic_json(s.algebraic_part);
    return j;
  };
  out["left"] = summand(rep.left);
  out["right"] = summand(rep.right);
  Json steps = Json::array();
  for (const auto& s : rep.steps) {
    Json j;
    j["k"] = s.k;
    j["gamma_left"] = algebraic_json(s.gamma_left);
    j["gamma_right"] = algebraic_json(s.gamma_right);
    j["degree_ok"] = s.degree_ok;
    j["half_tail_log10"] = log10_summary(s.half_tail.lo());
    j["gaps_match"] = s.gaps_match;
    steps.push_back(std::move(j));
  }
  out["steps"] = std::move(steps);
  Json levels = Json::array();
  for (const auto& l : rep.levels) {
    Json j;
    j["level"] = l.level;
    j["beta_width_log10"] = log10_summary(l.beta.width());
    j["sum_width_log10"] = log10_summary(l.sum.width());
    j["recombines"] = l.recombines;
    levels.push_back(std::move(j));
  }
  out["levels"] = std::move(levels);
  out["pass"] = rep.pass;
  return out;
}

std::string decompose_csv(const DecompositionReport& rep) {
  std::ostringstream out;
  out << "k,gamma_left_minpoly,gamma_right_minpoly,degree_ok,half_tail_exp10,gaps_match\n";
  for (const auto& s : rep.steps) {
    out << s.k << ',' << csv_quote(format_coeffs(s.gamma_left.minpoly(), ' ')) << ','
        << csv_quote(format_coeffs(s.gamma_right.minpoly(), ' ')) << ','
        << (s.degree_ok ? "true" : "false") << ',' << log10_summary(s.half_tail.lo()) << ','
        << (s.gaps_match ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace umcert::report
