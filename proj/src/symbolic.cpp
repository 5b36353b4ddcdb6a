#include "szeta/symbolic.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "szeta/error.hpp"

namespace szeta {

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

// Fredricksen-Kessler-Maiorana necklace generation restricted to words with no
// repeated adjacent symbol. a[1..n] holds the prefix, a[0] = 0 is a sentinel.
// Every prefix of an admissible necklace is an admissible prenecklace, so
// pruning on the adjacency rule never loses a class.
class NecklaceGenerator {
 public:
  NecklaceGenerator(int alphabet, int n) : alphabet_(alphabet), n_(n), a_(n + 1, 0) {}

  std::vector<OrbitClass> run() {
    if (n_ >= 1) visit(1, 1);
    return std::move(out_);
  }

 private:
  void visit(int t, int p) {
    if (t > n_) {
      if (n_ % p != 0) return;
      if (n_ >= 2 && a_[n_] == a_[1]) return;
      if (n_ == 1) return;
      OrbitClass cls;
      cls.representative.assign(a_.begin() + 1, a_.end());
      cls.length = n_;
      cls.primitive_period = p;
      cls.rotation_count = p;
      out_.push_back(std::move(cls));
      return;
    }
    const int base = a_[t - p];
    for (int j = base; j < alphabet_; ++j) {
      if (t >= 2 && j == a_[t - 1]) continue;
      a_[t] = static_cast<Symbol>(j);
      visit(t + 1, j == base ? p : t);
    }
  }

  int alphabet_;
  int n_;
  std::vector<Symbol> a_;
  std::vector<OrbitClass> out_;
};

}  // namespace

bool is_cyclically_admissible(std::span<const Symbol> word) {
  const std::size_t n = word.size();
  if (n == 0) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (word[k] == word[(k + 1) % n]) return false;
  }
  return true;
}

std::vector<OrbitClass> enumerate_orbit_classes(int alphabet, int n) {
  if (alphabet < 2 || n < 1) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("enumeration needs alphabet >= 2 and n >= 1 (got {}, {})", alphabet, n));
  }
  return NecklaceGenerator(alphabet, n).run();
}

std::uint64_t word_count(int alphabet, int n) {
  const std::int64_t q = alphabet - 1;
  std::int64_t power = 1;
  for (int k = 0; k < n; ++k) power *= q;
  const std::int64_t total = power + ((n % 2 == 0) ? q : -q);
  return static_cast<std::uint64_t>(total);
}

Word minimal_rotation(std::span<const Symbol> word) {
  Word best(word.begin(), word.end());
  Word candidate(word.size());
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::rotate_copy(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(r), word.end(),
                     candidate.begin());
    if (candidate < best) best = candidate;
  }
  return best;
}

std::pair<Word, int> primitive_decomposition(std::span<const Symbol> word) {
  const std::size_t n = word.size();
  for (std::size_t q = 1; q <= n; ++q) {
    if (n % q != 0) continue;
    bool periodic = true;
    for (std::size_t k = q; k < n && periodic; ++k) periodic = word[k] == word[k - q];
    if (periodic) return {Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(q)),
                          static_cast<int>(n / q)};
  }
  return {Word(word.begin(), word.end()), 1};
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char ch : text) {
    const auto pos = kDigits.find(ch);
    if (pos == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, fmt::format("bad symbol '{}' in word", ch));
    }
    w.push_back(static_cast<Symbol>(pos));
  }
  return w;
}

std::string to_string(std::span<const Symbol> word) {
  std::string s;
  s.reserve(word.size());
  for (Symbol c : word) s.push_back(kDigits[c]);
  return s;
}

}  // namespace szeta
