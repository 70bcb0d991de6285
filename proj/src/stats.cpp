#include "twl/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twl/heuristics.hpp"

namespace twl {

void Histogram::add(u64 n_solutions, u64 weight) {
  if (weight == 0) return;
  if (n_solutions >= counts.size()) counts.resize(n_solutions + 1, 0);
  counts[n_solutions] += weight;
  total += weight;
}

void Histogram::trim() {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
}

namespace {

bool ranges_overlap(const PrimeRange& a, const PrimeRange& b) {
  return a.lo < b.hi && b.lo < a.hi;
}

PrimeRange hull(const PrimeRange& a, const PrimeRange& b) {
  return PrimeRange{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace

Histogram merge(const Histogram& a, const Histogram& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (ranges_overlap(a.range, b.range))
    throw std::invalid_argument("histogram merge: overlapping ranges");
  Histogram out;
  out.range = hull(a.range, b.range);
  out.counts.resize(std::max(a.counts.size(), b.counts.size()), 0);
  for (std::size_t i = 0; i < a.counts.size(); ++i) out.counts[i] += a.counts[i];
  for (std::size_t i = 0; i < b.counts.size(); ++i) out.counts[i] += b.counts[i];
  out.total = a.total + b.total;
  out.trim();
  return out;
}

CumulativeHalfFact merge(const CumulativeHalfFact& a, const CumulativeHalfFact& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (ranges_overlap(a.range, b.range))
    throw std::invalid_argument("halffact merge: overlapping ranges");
  if (a.rows.size() != b.rows.size())
    throw std::invalid_argument("halffact merge: checkpoint lists differ");
  CumulativeHalfFact out;
  out.range = hull(a.range, b.range);
  out.rows.reserve(a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].x != b.rows[i].x)
      throw std::invalid_argument("halffact merge: checkpoint lists differ");
    out.rows.push_back(Table2Row{a.rows[i].x,
                                 a.rows[i].primes_3mod4 + b.rows[i].primes_3mod4,
                                 a.rows[i].r_equals_1 + b.rows[i].r_equals_1});
  }
  return out;
}

Table2Accumulator::Table2Accumulator(std::vector<u64> checkpoints, PrimeRange range)
    : checkpoints_(std::move(checkpoints)) {
  for (std::size_t i = 1; i < checkpoints_.size(); ++i)
    if (checkpoints_[i] <= checkpoints_[i - 1])
      throw std::invalid_argument("checkpoints must be strictly ascending");
  out_.range = range;
}

void Table2Accumulator::feed(u64 p, u64 r_p) {
  if (any_ && p <= last_p_)
    throw std::invalid_argument("half-factorial results must be fed in ascending order");
  while (next_ < checkpoints_.size() && p >= checkpoints_[next_]) {
    out_.rows.push_back(Table2Row{checkpoints_[next_], n3_, n1_});
    ++next_;
  }
  ++n3_;
  if (r_p == 1) ++n1_;
  last_p_ = p;
  any_ = true;
}

CumulativeHalfFact Table2Accumulator::finish() {
  while (next_ < checkpoints_.size()) {
    out_.rows.push_back(Table2Row{checkpoints_[next_], n3_, n1_});
    ++next_;
  }
  return out_;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "table") return OutputFormat::table;
  throw std::invalid_argument("unknown format: " + name);
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

namespace {

double conjecture_tail_sum() {
  double s = 0.0;
  for (int n = 0; n <= 250; ++n) s += conjecture_probability(n);
  return s;
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows, OutputFormat fmt) {
  std::ostringstream os;
  if (fmt == OutputFormat::csv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  // aligned text table, right-justified columns
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i >= width.size()) width.resize(i + 1, 0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << std::string(width[i] - row[i].size(), ' ') << row[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_table1(const Histogram& h, OutputFormat fmt) {
  const std::size_t n_rows = h.counts.size();
  const std::string total_conj = format_fixed(conjecture_tail_sum(), 7);
  const std::string total_prop = format_fixed(h.total ? 1.0 : 0.0, 7);
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["range"] = {{"lo", h.range.lo}, {"hi", h.range.hi}};
    j["total"] = h.total;
    j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < n_rows; ++n) {
      const double prop = h.total ? static_cast<double>(h.counts[n]) / static_cast<double>(h.total) : 0.0;
      j["rows"].push_back({{"N", n},
                           {"count", h.counts[n]},
                           {"proportion", format_fixed(prop, 7)},
                           {"conjecture", format_fixed(conjecture_probability(static_cast<int>(n)), 7)}});
    }
    j["total_row"] = {{"count", h.total}, {"proportion", total_prop}, {"conjecture", total_conj}};
    return j.dump() + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"N", "count", "proportion", "conjecture"});
  for (std::size_t n = 0; n < n_rows; ++n) {
    const double prop = h.total ? static_cast<double>(h.counts[n]) / static_cast<double>(h.total) : 0.0;
    rows.push_back({std::to_string(n), std::to_string(h.counts[n]), format_fixed(prop, 7),
                    format_fixed(conjecture_probability(static_cast<int>(n)), 7)});
  }
  rows.push_back({"Total", std::to_string(h.total), total_prop, total_conj});
  return render_rows(rows, fmt);
}

std::string format_table2(const CumulativeHalfFact& t, OutputFormat fmt) {
  auto proportion = [](const Table2Row& r) {
    return r.primes_3mod4 ? static_cast<double>(r.r_equals_1) / static_cast<double>(r.primes_3mod4) : 0.0;
  };
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["range"] = {{"lo", t.range.lo}, {"hi", t.range.hi}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows)
      j["rows"].push_back({{"X", r.x},
                           {"primes_3mod4", r.primes_3mod4},
                           {"r_p_eq_1", r.r_equals_1},
                           {"proportion", format_fixed(proportion(r), 10)}});
    return j.dump() + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"X", "primes_3mod4", "r_p_eq_1", "proportion"});
  for (const auto& r : t.rows)
    rows.push_back({std::to_string(r.x), std::to_string(r.primes_3mod4),
                    std::to_string(r.r_equals_1), format_fixed(proportion(r), 10)});
  return render_rows(rows, fmt);
}

IntegrityError::IntegrityError(const std::string& what, std::string record, std::size_t line)
    : std::runtime_error(what), record_(std::move(record)), line_(line) {}

namespace {

constexpr const char* kHistHeader = "twl-checkpoint v1 histogram";
constexpr const char* kHalfHeader = "twl-checkpoint v1 halffact";

u64 parse_u64(std::string_view tok, const std::string& record, std::size_t line) {
  u64 v = 0;
  const auto* beg = tok.data();
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(beg, end, v);
  if (ec != std::errc{} || ptr != end)
    throw IntegrityError("checkpoint: malformed number in record '" + record + "' (line " +
                             std::to_string(line) + ")",
                         record, line);
  return v;
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(' ', i);
    if (j == std::string::npos) j = s.size();
    out.push_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

// Reads the body lines of a checkpoint file and validates the framing:
// expected header, an end marker carrying the body line count, nothing after.
std::vector<std::string> read_checkpoint_lines(const std::filesystem::path& path,
                                               const std::string& expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError("checkpoint: cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string::npos)
      throw IntegrityError("checkpoint: truncated record '" + content.substr(start) + "' in " +
                               path.string(),
                           content.substr(start), lines.size() + 1);
    lines.push_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw IntegrityError("checkpoint: empty file " + path.string());
  if (lines.front() != expected_header)
    throw IntegrityError("checkpoint: bad header '" + lines.front() + "' in " + path.string(),
                         lines.front(), 1);
  if (lines.size() < 2 || lines.back().rfind("end ", 0) != 0)
    throw IntegrityError("checkpoint: missing end marker in " + path.string(), lines.back(),
                         lines.size());
  const std::string& end_line = lines.back();
  const u64 declared = parse_u64(end_line.substr(4), end_line, lines.size());
  if (declared != lines.size() - 1)
    throw IntegrityError("checkpoint: end marker count mismatch in " + path.string(), end_line,
                         lines.size());
  lines.pop_back();   // drop end marker
  lines.erase(lines.begin());  // drop header
  return lines;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint file " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("short write on checkpoint file " + path.string());
}

}  // namespace

void checkpoint_write(const Histogram& h, const std::filesystem::path& path) {
  std::ostringstream os;
  u64 body = 2;
  os << "range " << h.range.lo << ' ' << h.range.hi << '\n';
  os << "total " << h.total << '\n';
  for (std::size_t n = 0; n < h.counts.size(); ++n) {
    if (h.counts[n] == 0) continue;
    os << "n " << n << ' ' << h.counts[n] << '\n';
    ++body;
  }
  std::ostringstream full;
  full << kHistHeader << '\n' << os.str() << "end " << (body + 1) << '\n';
  write_file(path, full.str());
}

void checkpoint_write(const CumulativeHalfFact& t, const std::filesystem::path& path) {
  std::ostringstream os;
  os << kHalfHeader << '\n';
  os << "range " << t.range.lo << ' ' << t.range.hi << '\n';
  for (const auto& r : t.rows)
    os << "row " << r.x << ' ' << r.primes_3mod4 << ' ' << r.r_equals_1 << '\n';
  os << "end " << (t.rows.size() + 2) << '\n';
  write_file(path, os.str());
}

Histogram checkpoint_read_histogram(const std::filesystem::path& path) {
  const auto lines = read_checkpoint_lines(path, kHistHeader);
  Histogram h;
  bool have_range = false, have_total = false;
  u64 declared_total = 0;
  u64 prev_n = 0;
  bool any_n = false;
  std::size_t line_no = 1;
  for (const auto& line : lines) {
    ++line_no;
    const auto tok = split_tokens(line);
    if (tok.size() == 3 && tok[0] == "range" && !have_range) {
      h.range.lo = parse_u64(tok[1], line, line_no);
      h.range.hi = parse_u64(tok[2], line, line_no);
      have_range = true;
    } else if (tok.size() == 2 && tok[0] == "total" && !have_total) {
      declared_total = parse_u64(tok[1], line, line_no);
      have_total = true;
    } else if (tok.size() == 3 && tok[0] == "n" && have_total) {
      const u64 n = parse_u64(tok[1], line, line_no);
      const u64 c = parse_u64(tok[2], line, line_no);
      if ((any_n && n <= prev_n) || c == 0)
        throw IntegrityError("checkpoint: bad count record '" + line + "' in " + path.string(),
                             line, line_no);
      h.add(n, c);
      prev_n = n;
      any_n = true;
    } else {
      throw IntegrityError("checkpoint: unexpected record '" + line + "' in " + path.string(),
                           line, line_no);
    }
  }
  if (!have_range || !have_total)
    throw IntegrityError("checkpoint: missing range/total in " + path.string());
  if (h.total != declared_total)
    throw IntegrityError("checkpoint: total does not match counts in " + path.string(),
                         "total " + std::to_string(declared_total));
  h.total = declared_total;
  return h;
}

CumulativeHalfFact checkpoint_read_halffact(const std::filesystem::path& path) {
  const auto lines = read_checkpoint_lines(path, kHalfHeader);
  CumulativeHalfFact t;
  bool have_range = false;
  std::size_t line_no = 1;
  for (const auto& line : lines) {
    ++line_no;
    const auto tok = split_tokens(line);
    if (tok.size() == 3 && tok[0] == "range" && !have_range) {
      t.range.lo = parse_u64(tok[1], line, line_no);
      t.range.hi = parse_u64(tok[2], line, line_no);
      have_range = true;
    } else if (tok.size() == 4 && tok[0] == "row" && have_range) {
      Table2Row r;
      r.x = parse_u64(tok[1], line, line_no);
      r.primes_3mod4 = parse_u64(tok[2], line, line_no);
      r.r_equals_1 = parse_u64(tok[3], line, line_no);
      if (!t.rows.empty() && r.x <= t.rows.back().x)
        throw IntegrityError("checkpoint: rows out of order '" + line + "' in " + path.string(),
                             line, line_no);
      if (r.r_equals_1 > r.primes_3mod4)
        throw IntegrityError("checkpoint: inconsistent counts '" + line + "' in " + path.string(),
                             line, line_no);
      t.rows.push_back(r);
    } else {
      throw IntegrityError("checkpoint: unexpected record '" + line + "' in " + path.string(),
                           line, line_no);
    }
  }
  if (!have_range) throw IntegrityError("checkpoint: missing range in " + path.string());
  return t;
}

}  // namespace twl
