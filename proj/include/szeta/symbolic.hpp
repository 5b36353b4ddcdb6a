#pragma once

// Periodic symbol sequences over the generator alphabet {0, ..., L-1}.
// A word is admissible when no symbol is followed by itself, including the
// wrap-around pair (last, first).

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace szeta {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

struct OrbitClass {
  Word representative;  // lexicographically minimal rotation
  int length = 0;
  int rotation_count = 0;
  int primitive_period = 0;
};

bool is_cyclically_admissible(std::span<const Symbol> word);

// All rotation classes of admissible words of length n, in lexicographic
// order of representative.
std::vector<OrbitClass> enumerate_orbit_classes(int alphabet, int n);

// Number of admissible words of length n: (L-1)^n + (L-1)(-1)^n.
std::uint64_t word_count(int alphabet, int n);

std::pair<Word, int> primitive_decomposition(std::span<const Symbol> word);

Word minimal_rotation(std::span<const Symbol> word);

Word parse_word(std::string_view text);
std::string to_string(std::span<const Symbol> word);

}  // namespace szeta
