#pragma once
//
// Error types shared across the library.
//
// Law-check *failures* are never exceptions -- they are data carried in
// reports (see report.hpp).  Exceptions are reserved for misuse of the
// finite data itself: composing maps across mismatched boundaries,
// violating a static separation requirement, malformed configuration,
// or blowing an enumeration budget.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace duofreyd {

/// Base class of every exception thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Composition or tensor applied across mismatched domains/codomains.
struct boundary_error : error {
  using error::error;
};

/// Parallel composition of stateful maps whose resource labels overlap.
/// This is a *static* typing error (the pair lies outside the carrier of
/// the parallel tensor), raised before anything executes.
struct separation_error : error {
  std::vector<std::string> overlap;  ///< offending resource names
  separation_error(const std::string& msg, std::vector<std::string> ov)
      : error(msg), overlap(std::move(ov)) {}
};

/// Unknown instance, malformed file, bad flag value, and similar.
struct config_error : error {
  using error::error;
};

/// A carrier or morphism enumeration would exceed the configured budget.
struct budget_error : config_error {
  std::uint64_t requested;  ///< size that was asked for
  std::uint64_t bound;      ///< configured ceiling
  budget_error(const std::string& msg, std::uint64_t req, std::uint64_t b)
      : config_error(msg), requested(req), bound(b) {}
};

}  // namespace duofreyd
