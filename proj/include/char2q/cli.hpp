#pragma once

/**
 * @file cli.hpp
 * @brief The char2q command line as a callable function.
 *
 *   symbol inv   --kind as|bil --a A --b B [--convention]
 *   slot common-b|common-a|common-a-bil  (--a1 --b1 --a2 --b2 | --witness-file F)
 *   oracle isotropy --kind --a --b [--min-exp --max-exp]
 *   oracle cross-validate [--window-min --window-max --window-terms]
 *   selftest
 *
 * Global flags: --field, --prec, --seed (default 0), --json.
 * Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
 */

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "char2q/json_io.hpp"

namespace char2q::cli {

/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Seeded run of every property suite at reduced sample counts.
[[nodiscard]] json_io::Json selftest_transcript(std::uint64_t seed);

} // namespace char2q::cli
