#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ffprim/sweep.hpp"

namespace ffprim {

struct TableRow {
  int n = 0;
  u64 q = 0;
  std::string status;
  std::string traces;  // ';'-separated rendering, empty for the survivor table
};

/// Exhaustive verification of one pair: the trace census of the 2-primitive
/// elements and whether it covers every applicable value (all of F_q for
/// degree >= 3, the nonzero values for degree 2).
struct VerificationOutcome {
  u64 q = 0;
  int n = 0;
  bool full_coverage = false;
  std::set<u64> traces;                 // base element indices
  std::vector<std::string> rendered;    // canonical strings, index-ascending
};

VerificationOutcome verify_pair(u64 q, int n);
std::vector<VerificationOutcome> verify_pairs(const std::vector<std::pair<u64, int>>& pairs,
                                              unsigned threads = 0);

/// The pairs the analytic machinery leaves unresolved: the quadratic sweep to
/// 14850 plus the cubic sweep, sorted by degree then q.
std::vector<TableRow> generate_survivor_table(unsigned threads = 0);

/// The genuine exceptions discovered by exhaustively verifying every survivor
/// pair, with their trace sets.
std::vector<TableRow> generate_exception_table(unsigned threads = 0);

std::string table_to_csv(const std::vector<TableRow>& rows, bool with_traces);
std::vector<TableRow> load_table_csv(const std::filesystem::path& file, bool with_traces);
/// Empty string when equal, otherwise a line-oriented diff.
std::string diff_tables(const std::vector<TableRow>& expected, const std::vector<TableRow>& actual);

}  // namespace ffprim
