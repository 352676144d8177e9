#pragma once
//
// Law reports.  Checkers never throw on a failed law -- failures are data.
// A report aggregates, per law family, how many concrete instances were
// checked and keeps a bounded number of concrete counterexamples; it
// renders as a table or as line-delimited JSON records
// {law, instances, checked, failures, status, counterexample?}.

#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace duofreyd {

struct LawRecord {
  std::string law;
  std::string instances;  ///< human description of the probe family or the failing instance
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  bool pass = true;
  std::optional<std::string> counterexample;
};

class LawReport {
  struct Family {
    std::string desc;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::vector<std::pair<std::string, std::string>> witnesses;  // (instance, counterexample)
  };
  // std::map keeps law families in deterministic (name) order.
  std::map<std::string, Family> families_;
  std::size_t witness_cap_;

 public:
  explicit LawReport(std::size_t witness_cap = 5) : witness_cap_(witness_cap) {}

  /// Record one checked instance of a law.  `witness` is only invoked on
  /// failure, so callers can defer rendering costs.
  void tally(const std::string& law, bool ok,
             const std::function<std::pair<std::string, std::string>()>& witness = {}) {
    Family& f = families_[law];
    ++f.checked;
    if (!ok) {
      ++f.failures;
      if (f.witnesses.size() < witness_cap_ && witness) f.witnesses.push_back(witness());
    }
  }

  /// Record a block of passing instances at once.
  void bulk_pass(const std::string& law, std::uint64_t count) {
    families_[law].checked += count;
  }

  /// Attach/extend the human description of a law family's probe coverage.
  void describe(const std::string& law, const std::string& desc) {
    Family& f = families_[law];
    if (f.desc.empty()) f.desc = desc;
  }

  void merge(const LawReport& other) {
    for (const auto& [law, fam] : other.families_) {
      Family& f = families_[law];
      if (f.desc.empty()) f.desc = fam.desc;
      f.checked += fam.checked;
      f.failures += fam.failures;
      for (const auto& w : fam.witnesses)
        if (f.witnesses.size() < witness_cap_) f.witnesses.push_back(w);
    }
  }

  bool ok() const {
    for (const auto& [law, fam] : families_)
      if (fam.failures > 0) return false;
    return true;
  }

  std::uint64_t total_checked() const {
    std::uint64_t n = 0;
    for (const auto& [law, fam] : families_) n += fam.checked;
    return n;
  }

  std::uint64_t total_failures() const {
    std::uint64_t n = 0;
    for (const auto& [law, fam] : families_) n += fam.failures;
    return n;
  }

  /// First counterexample of the given law family, if any (for tests).
  std::optional<std::string> first_witness(const std::string& law) const {
    auto it = families_.find(law);
    if (it == families_.end() || it->second.witnesses.empty()) return std::nullopt;
    return it->second.witnesses.front().second;
  }

  std::uint64_t failures_of(const std::string& law) const {
    auto it = families_.find(law);
    return it == families_.end() ? 0 : it->second.failures;
  }

  std::uint64_t checked_of(const std::string& law) const {
    auto it = families_.find(law);
    return it == families_.end() ? 0 : it->second.checked;
  }

  std::vector<std::string> failing_laws() const {
    std::vector<std::string> out;
    for (const auto& [law, fam] : families_)
      if (fam.failures > 0) out.push_back(law);
    return out;
  }

  /// One record per family, plus one per retained counterexample.
  std::vector<LawRecord> records() const {
    std::vector<LawRecord> out;
    for (const auto& [law, fam] : families_) {
      LawRecord r;
      r.law = law;
      r.instances = fam.desc;
      r.checked = fam.checked;
      r.failures = fam.failures;
      r.pass = fam.failures == 0;
      out.push_back(r);
      for (const auto& [inst, cex] : fam.witnesses) {
        LawRecord w;
        w.law = law;
        w.instances = inst;
        w.checked = 1;
        w.failures = 1;
        w.pass = false;
        w.counterexample = cex;
        out.push_back(w);
      }
    }
    return out;
  }

  void render_ndjson(std::ostream& os) const {
    for (const auto& r : records()) {
      nlohmann::json j{{"law", r.law},
                       {"instances", r.instances},
                       {"checked", r.checked},
                       {"failures", r.failures},
                       {"status", r.pass ? "pass" : "fail"}};
      if (r.counterexample) j["counterexample"] = *r.counterexample;
      os << j.dump() << "\n";
    }
  }

  void render_table(std::ostream& os) const {
    os << std::left << std::setw(44) << "law" << std::setw(10) << "checked"
       << std::setw(10) << "failures" << std::setw(7) << "status"
       << "detail\n";
    os << std::string(100, '-') << "\n";
    for (const auto& r : records()) {
      std::string detail = r.counterexample ? (r.instances + " :: " + *r.counterexample)
                                            : r.instances;
      os << std::left << std::setw(44) << r.law << std::setw(10) << r.checked
         << std::setw(10) << r.failures << std::setw(7) << (r.pass ? "pass" : "FAIL")
         << detail << "\n";
    }
    os << (ok() ? "all laws pass" : "LAW FAILURES PRESENT") << " ("
       << total_checked() << " instances checked)\n";
  }
};

}  // namespace duofreyd
