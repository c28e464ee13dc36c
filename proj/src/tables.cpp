#include "ffprim/tables.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ffprim/counts.hpp"

namespace ffprim {

VerificationOutcome verify_pair(u64 q, int n) {
  Extension E = Extension::build(q, n);
  auto census = census_two_primitive(E);
  VerificationOutcome out;
  out.q = q;
  out.n = n;
  out.traces = census.support();
  out.full_coverage = true;
  for (u64 b = (n == 2 ? 1 : 0); b < q; ++b)
    if (!out.traces.count(b)) out.full_coverage = false;
  for (u64 b : out.traces) out.rendered.push_back(E.base().to_string(E.base().from_index(b)));
  return out;
}

std::vector<VerificationOutcome> verify_pairs(const std::vector<std::pair<u64, int>>& pairs,
                                              unsigned threads) {
  std::vector<VerificationOutcome> out(pairs.size());
  parallel_for(pairs.size(), resolve_threads(threads),
               [&](std::size_t i) { out[i] = verify_pair(pairs[i].first, pairs[i].second); });
  return out;
}

std::vector<TableRow> generate_survivor_table(unsigned threads) {
  auto quad = run_sweep(2, 14850, "nonzero", threads);
  // the cubic cascade bottoms out well under 400
  auto cubic = run_sweep(3, 400, "all", threads);
  std::vector<TableRow> rows;
  for (u64 q : quad.survivors) rows.push_back(TableRow{2, q, "unresolved", ""});
  for (u64 q : cubic.survivors) rows.push_back(TableRow{3, q, "unresolved", ""});
  return rows;
}

std::vector<TableRow> generate_exception_table(unsigned threads) {
  auto survivors = generate_survivor_table(threads);
  std::vector<std::pair<u64, int>> pairs;
  for (const auto& row : survivors) pairs.emplace_back(row.q, row.n);
  auto outcomes = verify_pairs(pairs, threads);
  std::vector<TableRow> rows;
  for (const auto& o : outcomes) {
    if (o.full_coverage) continue;
    std::string traces;
    for (const auto& s : o.rendered) {
      if (!traces.empty()) traces += ";";
      traces += s;
    }
    rows.push_back(TableRow{o.n, o.q, "exception", traces});
  }
  return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows, bool with_traces) {
  std::ostringstream out;
  out << (with_traces ? "n,q,status,traces\n" : "n,q,status\n");
  for (const auto& r : rows) {
    out << r.n << "," << r.q << "," << r.status;
    if (with_traces) out << "," << r.traces;
    out << "\n";
  }
  return out.str();
}

std::vector<TableRow> load_table_csv(const std::filesystem::path& file, bool with_traces) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("load_table_csv: cannot open " + file.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string n_s, q_s, status, traces;
    std::getline(ls, n_s, ',');
    std::getline(ls, q_s, ',');
    std::getline(ls, status, ',');
    if (with_traces) std::getline(ls, traces, ',');
    rows.push_back(TableRow{std::stoi(n_s), std::stoull(q_s), status, traces});
  }
  return rows;
}

std::string diff_tables(const std::vector<TableRow>& expected, const std::vector<TableRow>& actual) {
  std::ostringstream out;
  auto fmt = [](const TableRow& r) {
    std::ostringstream s;
    s << r.n << "," << r.q << "," << r.status;
    if (!r.traces.empty()) s << "," << r.traces;
    return s.str();
  };
  std::size_t rows = std::max(expected.size(), actual.size());
  for (std::size_t i = 0; i < rows; ++i) {
    std::string e = i < expected.size() ? fmt(expected[i]) : "<missing>";
    std::string a = i < actual.size() ? fmt(actual[i]) : "<missing>";
    if (e != a) out << "row " << i + 1 << ": expected [" << e << "] got [" << a << "]\n";
  }
  return out.str();
}

}  // namespace ffprim
