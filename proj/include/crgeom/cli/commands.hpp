#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crgeom/examples/family.hpp"

namespace crgeom::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 2, kUsage = 64, kData = 65, kInternal = 70 };

inline constexpr int kSchemaVersion = 1;

/// Entry point shared by the binary and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Full verification pipeline for one example. runtime_ms fields are
/// present only when timings is set, so default reports are byte-stable.
nlohmann::json verify_report(const examples::ExampleSpec& spec, bool timings);

/// One-form written in the adapted coframe, e.g. "4*zb1*theta1".
std::string format_in_coframe(const ph::PHStructure& s, const exterior::Form& w);

/// Named expressions for connection | curvature | ricci | chern | levi, in a
/// stable order. Errors: precondition for an unknown target.
std::vector<std::pair<std::string, std::string>> invariant_entries(const examples::ExampleBuild& b,
                                                                   const std::string& target);

}  // namespace crgeom::cli
