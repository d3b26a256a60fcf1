#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tensortrack {

// Run one tool invocation. Returns the process exit code: 0 on success, 1
// when a computation hits a resource bound, flow pole, or internal
// inconsistency, 2 on usage or input errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tensortrack
