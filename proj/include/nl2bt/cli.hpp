#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nl2bt::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,        // eval below threshold, mission FAILURE, generation failure
  kNoVerbMatch = 2,   // utterance not covered by the lexicon
  kInvalid = 3,       // validation errors (strict or structural), unemittable names
  kSyntax = 4,        // malformed logical form, XML, or corpus TSV
  kIo = 5,            // unreadable input or unwritable output file
  kConfig = 6,        // malformed registry, lexicon, or template file
};

// `args` excludes the program name. Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace nl2bt::cli
