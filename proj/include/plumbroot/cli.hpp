#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plumbroot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Full command line without the program name, e.g. {"zz", "s3.json", ...}.
// Results and JSON error objects go to out; usage text goes to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plumbroot
