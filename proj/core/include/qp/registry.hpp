#pragma once

#include "qp/check.hpp"

#include <functional>

namespace qp {

struct UnknownCheck : std::invalid_argument {
    explicit UnknownCheck(const std::string& n) : std::invalid_argument("unknown check: " + n) {}
};

/// A named verification suite: default l values, default oracle mode, and
/// the runner. Names are stable identifiers consumed by the CLI.
struct CheckEntry {
    std::string name;
    std::string summary;
    std::vector<int> default_ls;
    RunOptions::Mode default_mode;
    bool default_require_exact;
    std::function<CheckReport(int l, const RunOptions&)> run;
};

const std::vector<CheckEntry>& check_registry();
const CheckEntry& find_check(const std::string& name);

/// Run one named check over the l values (empty -> defaults). When
/// `mode_overridden` is false the entry's default mode is used.
std::vector<CheckReport> run_named_check(const std::string& name, std::vector<int> ls,
                                         RunOptions opt, bool mode_overridden);

/// Canonical serialization of H_0 used by the fixture files.
std::string fixture_h0_json(int l, int order);

struct FixtureOutcome {
    bool ok = true;
    std::vector<std::string> detail;
};
FixtureOutcome fixtures_verify(const std::string& dir, int order);
FixtureOutcome fixtures_regenerate(const std::string& dir, int order);

} // namespace qp
