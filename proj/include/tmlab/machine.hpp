#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tmlab {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

enum class Move : std::uint8_t { Left, Right };

struct Transition {
  StateId from_state = 0;
  SymbolId read = 0;
  StateId to_state = 0;
  SymbolId write = 0;
  Move move = Move::Left;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Minimal binary numeral: no leading zeros, zero itself is "0".
inline std::string binary_numeral(std::uint64_t value) {
  if (value == 0) return "0";
  std::string s;
  for (; value > 0; value >>= 1) s.push_back((value & 1) != 0 ? '1' : '0');
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::size_t numeral_width(std::uint64_t value) {
  std::size_t w = 1;
  while (value >>= 1) ++w;
  return w;
}

// Sort key for transition tables: the concatenation of the numerals of
// from_state, read, to_state, write and the move bit, read as one binary
// numeral. Distinct transitions can collide on the numeral value when the
// parts have different widths, so (from_state, read) breaks ties.
inline std::string transition_key(const Transition& t) {
  std::string key = binary_numeral(t.from_state);
  key += binary_numeral(t.read);
  key += binary_numeral(t.to_state);
  key += binary_numeral(t.write);
  key += t.move == Move::Right ? '1' : '0';
  return key;
}

inline bool numeral_value_less(std::string_view a, std::string_view b) {
  a.remove_prefix(std::min(a.find_first_not_of('0'), a.size()));
  b.remove_prefix(std::min(b.find_first_not_of('0'), b.size()));
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline bool transition_order_less(const Transition& lhs, const Transition& rhs) {
  const std::string a = transition_key(lhs);
  const std::string b = transition_key(rhs);
  if (numeral_value_less(a, b)) return true;
  if (numeral_value_less(b, a)) return false;
  return std::pair(lhs.from_state, lhs.read) < std::pair(rhs.from_state, rhs.read);
}

// A deterministic single-tape machine. States are 0..states-1 with 0 the
// initial state; tape symbols are 0..tape_symbols-1 with the blank equal to
// tape_symbols-1; input symbols are the first input_symbols tape symbols.
// `transitions` is kept in key order and `finals` strictly increasing; the
// full well-formedness rules live in validate() (codec.hpp).
struct Machine {
  std::uint32_t states = 0;         // n
  std::uint32_t input_symbols = 0;  // k
  std::uint32_t tape_symbols = 0;   // m
  std::vector<Transition> transitions;
  std::vector<StateId> finals;

  SymbolId blank() const { return tape_symbols - 1; }

  bool is_final(StateId s) const { return std::binary_search(finals.begin(), finals.end(), s); }

  const Transition* find_transition(StateId state, SymbolId symbol) const {
    for (const Transition& t : transitions)
      if (t.from_state == state && t.read == symbol) return &t;
    return nullptr;
  }

  friend bool operator==(const Machine&, const Machine&) = default;
};

// Puts transitions and final states into canonical order. Hand-assembled
// machines go through here; decoded machines are already canonical.
inline Machine canonicalized(Machine m) {
  std::sort(m.transitions.begin(), m.transitions.end(), transition_order_less);
  std::sort(m.finals.begin(), m.finals.end());
  return m;
}

}  // namespace tmlab
