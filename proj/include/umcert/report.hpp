#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "umcert/certify.hpp"
#include "umcert/oracle.hpp"

namespace umcert::report {

using Json = nlohmann::ordered_json;

// Decimal approximation of log10|x| with six places, for summaries only.
std::string log10_summary(const Rational& x);
std::string log10_summary(const Integer& n);

Json enclosure_json(const Enclosure& e);
Json algebraic_json(const RealAlgebraic& a);

// One table row per index; the exact tail is written when its denominator
// has at most exact_digit_limit digits, otherwise a rounded outer
// enclosure is written and flagged.
struct TruncationRow {
  TruncationRecord record;
  Eq2Result eq2;
};
Json truncations_json(const std::vector<TruncationRow>& rows, std::size_t exact_digit_limit = 1000000);
std::string truncations_csv(const std::vector<TruncationRow>& rows);

// Overall status of a certificate chain.
struct CertifySummary {
  Verdict eq3 = Verdict::pass;
  Verdict eq4_literal = Verdict::pass;
  Verdict eq4_corrected = Verdict::pass;
  Verdict eq5 = Verdict::pass;
  // Per reading, over all in-regime entries.
  Verdict eq9_literal = Verdict::pass;
  Verdict eq9_grouped = Verdict::pass;
  Verdict eq9_derived = Verdict::pass;
  // The derived reading holds from some k on, for every n.
  bool eq9_derived_eventually = true;
  bool omega_increasing = true;
  int exit_status = 0;
};

CertifySummary summarize(const std::vector<CertificateRecord>& records, bool strict);

Json certificate_json(const RealAlgebraic& alpha, OpKind kind,
                      const std::vector<CertificateRecord>& records, const CertifySummary& s);
std::string certificate_csv(const std::vector<CertificateRecord>& records);

Json exception_json(const RealAlgebraic& alpha, OpKind kind, int n, const Integer& h_max,
                    const ExceptionScan& scan, const Approximant* best);
std::string exception_csv(const ExceptionScan& scan);

Json scan_json(const std::string& target_name, const std::vector<ExponentEstimate>& rows);
std::string scan_csv(const std::vector<ExponentEstimate>& rows);

Json probe_json(const SchmidtReport& rep);
std::string probe_csv(const SchmidtReport& rep);

Json decompose_json(const DecompositionReport& rep);
std::string decompose_csv(const DecompositionReport& rep);

}  // namespace umcert::report
