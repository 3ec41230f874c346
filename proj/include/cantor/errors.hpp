#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Error taxonomy shared by the library, the CLI and the python bindings.
// The CLI maps these onto process exit codes; see tools/cantor_cli.cpp.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An index or level outside the constructed range.
struct IndexOutOfRange : Error { using Error::Error; };

// A mathematically invalid argument (ratio outside (0,1), negative length,
// division by an interval containing zero, ...).
struct DomainError : Error { using Error::Error; };

// The requested density bound cannot be met by any positive-measure set the
// synthesizer can produce (wrong limit at zero, nonpositive values, ...).
struct InvalidTarget : Error { using Error::Error; };

// Synthesis produced a candidate but one of its own certified post-checks
// failed (margins, tail domination, positive measure).
struct SynthesisUnverified : Error { using Error::Error; };

// A verification certificate definitely fails.
struct CertificateFailed : Error { using Error::Error; };

// A certificate comparison stayed indeterminate after precision escalation.
struct IndeterminateCertificate : Error { using Error::Error; };

// Work would exceed a configured size bound (e.g. brute force beyond the
// component cap).
struct ResourceLimit : Error { using Error::Error; };

// A curve's speed vanishes (or nearly vanishes) somewhere on the sampled
// grid, so arc-length reparametrization is ill posed.
struct DegenerateDerivative : Error { using Error::Error; };

// Floating-point diagnostics contradict a certified or exact quantity.
struct NumericalInconsistency : Error { using Error::Error; };

// Malformed textual input (expression, rational literal, JSON document).
struct ParseError : Error { using Error::Error; };

// A required input file is missing or empty.
struct MissingInput : Error { using Error::Error; };

}  // namespace cantor
