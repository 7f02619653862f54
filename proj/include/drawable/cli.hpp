#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "drawable/schedule.hpp"
#include "drawable/schedules.hpp"

namespace drawable {

inline constexpr const char* kVersion = "0.1.0";

// Runs one command line (without the program name). Results go to `out`,
// failures to `err` as a JSON error object; returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Builder spec such as "ufin(invlog:3,2)" or "replicate(ufin:4)".
EdgeSchedule build_schedule(const std::string& spec, Vertex vertex_budget,
                            const ScheduleConfig& cfg = {});

// Splits "a,b(c,d),e" at top-level commas.
std::vector<std::string> split_top(const std::string& text, char sep = ',');

}  // namespace drawable
