#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leeyang/domains.hpp"

namespace leeyang::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// halfplane[:theta] | uhp | rhp | disc[:cx,cy,r] | exterior[:cx,cy,r].
/// Throws FormatError on anything else.
CircularDomain parse_domain(const std::string& text);

/// Seed used when --seed is absent: LEEYANG_SEED if set, else 0.
std::uint64_t default_seed();

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leeyang::cli
