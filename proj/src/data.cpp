#include "costsense/data.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "costsense/random.hpp"

namespace costsense {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  if (const auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);
  return s;
}

std::string_view next_token(std::string_view& s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  std::size_t n = 0;
  while (n < s.size() && !is_space(s[n])) ++n;
  const auto tok = s.substr(0, n);
  s.remove_prefix(n);
  return tok;
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, long long& out) {
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Example parse_libsvm_line(std::string_view line, std::size_t line_no) {
  auto rest = trim(strip_comment(line));
  if (rest.empty()) throw ParseError(line_no, "empty line");

  const auto label_tok = next_token(rest);
  double label = 0.0;
  if (!parse_double(label_tok, label))
    throw ParseError(line_no, "malformed label '" + std::string(label_tok) + "'");
  Example e;
  if (label == 1.0) {
    e.label = 1;
  } else if (label == -1.0) {
    e.label = -1;
  } else {
    throw ParseError(line_no, "non-binary label '" + std::string(label_tok) + "'");
  }

  long long prev = 0;
  for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "malformed token '" + std::string(tok) + "'");
    long long index = 0;
    double value = 0.0;
    if (!parse_index(tok.substr(0, colon), index) || !parse_double(tok.substr(colon + 1), value))
      throw ParseError(line_no, "malformed token '" + std::string(tok) + "'");
    if (index < 1) throw ParseError(line_no, "index " + std::to_string(index) + " < 1");
    if (index <= prev)
      throw ParseError(line_no, "non-increasing index " + std::to_string(index) + " after " +
                                    std::to_string(prev));
    if (index > std::numeric_limits<std::int32_t>::max())
      throw ParseError(line_no, "index " + std::to_string(index) + " out of range");
    prev = index;
    e.features.push_back(static_cast<std::int32_t>(index - 1), value);
  }
  return e;
}

std::string to_libsvm_line(const Example& e) {
  std::string out = e.label > 0 ? "+1" : "-1";
  for (std::size_t k = 0; k < e.features.nnz(); ++k) {
    out += ' ';
    out += std::to_string(e.features.index[k] + 1);
    out += ':';
    out += format_double(e.features.value[k]);
  }
  return out;
}

Example normalize(const Example& e) {
  const double n = e.features.norm();
  if (!(n > 0.0)) throw Error("cannot normalize an all-zero feature vector");
  Example out = e;
  for (double& v : out.features.value) v /= n;
  return out;
}

Dataset make_dataset(std::vector<Example> examples, std::optional<std::int32_t> d_override) {
  Dataset ds;
  ds.examples = std::move(examples);
  for (const auto& e : ds.examples) {
    ds.d = std::max(ds.d, e.features.extent());
    (e.label > 0 ? ds.t_pos : ds.t_neg) += 1;
  }
  if (d_override) {
    if (*d_override < ds.d)
      throw Error("dimension override " + std::to_string(*d_override) +
                  " is smaller than the largest index " + std::to_string(ds.d));
    ds.d = *d_override;
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, std::optional<std::int32_t> d_override) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");

  std::vector<Example> examples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(strip_comment(line)).empty()) continue;
    auto e = parse_libsvm_line(line, line_no);
    if (!(e.features.norm() > 0.0)) throw ParseError(line_no, "all-zero feature vector");
    examples.push_back(normalize(e));
  }
  if (examples.empty()) throw Error("dataset '" + path.string() + "' contains no examples");
  return make_dataset(std::move(examples), d_override);
}

std::vector<std::vector<std::size_t>> split_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n)
    throw Error("fold count " + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");
  const auto order = permutation(n, seed);
  std::vector<std::vector<std::size_t>> folds(k);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return folds;
}

}  // namespace costsense
