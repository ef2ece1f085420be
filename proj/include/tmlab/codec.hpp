#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmlab/errors.hpp"
#include "tmlab/machine.hpp"

// Printer/parser for the canonical machine encoding over the five-character
// alphabet {0, 1, (, ), ,} and the base-5 machine number obtained from it by
// the substitution 0->0, 1->1, (->2, )->3, ,->4.
//
// Grammar (normative):
//   machine := "(" num "," num "," num "," "(" trans ("," trans)* ")"
//                  "," "(" num ("," num)* ")" ")"
//   trans   := "(" num "," num "," num "," num "," bit ")"
//   num     := "0" | "1" ("0"|"1")*
//   bit     := "0" | "1"
//
// The three leading numerals are the state count, the input alphabet size and
// the tape alphabet size, in that order. Transitions appear in increasing key
// order, final states in increasing order, and numerals carry no leading
// zeros, so every machine has exactly one accepted spelling.

namespace tmlab {

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidityReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::string s;
    for (const Violation& v : violations) {
      if (!s.empty()) s += "; ";
      s += v.rule + ": " + v.detail;
    }
    return s;
  }
};

class InvalidMachine : public Error {
 public:
  explicit InvalidMachine(ValidityReport report)
      : Error("invalid machine: " + report.to_string()), report_(std::move(report)) {}
  const ValidityReport& report() const { return report_; }

 private:
  ValidityReport report_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error: expected " + expected + " at position " + std::to_string(position)),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class SemanticError : public Error {
 public:
  explicit SemanticError(ValidityReport report)
      : Error("semantic error: " + report.to_string()), report_(std::move(report)) {}
  const ValidityReport& report() const { return report_; }

 private:
  ValidityReport report_;
};

// Checks every machine invariant. Each broken rule is reported once, with the
// first offending item as detail; an empty report means the machine is valid.
inline ValidityReport validate(const Machine& m) {
  ValidityReport report;
  auto add = [&report](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };

  if (m.states < 2)
    add("STATE_COUNT", "need separate initial and final states, got " + std::to_string(m.states));
  if (m.tape_symbols < 1) add("TAPE_ALPHABET", "the tape alphabet must contain the blank symbol");
  if (m.tape_symbols >= 1 && m.input_symbols > m.tape_symbols - 1)
    add("INPUT_ALPHABET", "input alphabet size " + std::to_string(m.input_symbols) +
                              " exceeds " + std::to_string(m.tape_symbols) + "-1");

  if (m.finals.empty()) add("FINALS_EMPTY", "at least one final state is required");
  for (const StateId f : m.finals) {
    if (f == 0 || f >= m.states) {
      add("FINALS_RANGE", "final state " + std::to_string(f) +
                              " is not in 1.." + std::to_string(m.states) + "-1");
      break;
    }
  }
  for (std::size_t i = 1; i < m.finals.size(); ++i) {
    if (m.finals[i] <= m.finals[i - 1]) {
      add("FINALS_UNSORTED", "final states must be strictly increasing, saw " +
                                 std::to_string(m.finals[i - 1]) + " before " +
                                 std::to_string(m.finals[i]));
      break;
    }
  }

  bool ranges_ok = true;
  for (const Transition& t : m.transitions) {
    if (t.from_state >= m.states || t.to_state >= m.states || t.read >= m.tape_symbols ||
        t.write >= m.tape_symbols) {
      add("TRANSITION_RANGE", "transition (" + std::to_string(t.from_state) + "," +
                                  std::to_string(t.read) + ",...) references a state or symbol "
                                  "outside the declared alphabets");
      ranges_ok = false;
      break;
    }
  }
  bool from_final = false;
  for (const Transition& t : m.transitions) {
    if (m.is_final(t.from_state)) {
      add("TRANSITION_FROM_FINAL",
          "state " + std::to_string(t.from_state) + " is final but has an outgoing transition");
      from_final = true;
      break;
    }
  }
  bool duplicate = false;
  {
    std::set<std::pair<StateId, SymbolId>> seen;
    for (const Transition& t : m.transitions) {
      if (!seen.emplace(t.from_state, t.read).second) {
        add("DUPLICATE_TRANSITION", "two transitions for (" + std::to_string(t.from_state) + ", " +
                                        std::to_string(t.read) + ")");
        duplicate = true;
        break;
      }
    }
  }
  // With distinct (state, symbol) pairs drawn from non-final states, the
  // count check is equivalent to full coverage of (Q\F) x Gamma.
  if (ranges_ok && !from_final && !duplicate && m.states >= 2 && !m.finals.empty() &&
      m.finals.front() >= 1 && m.finals.back() < m.states) {
    const std::uint64_t required =
        static_cast<std::uint64_t>(m.states - m.finals.size()) * m.tape_symbols;
    if (m.transitions.size() < required)
      add("MISSING_TRANSITION", "have " + std::to_string(m.transitions.size()) +
                                    " transitions, need " + std::to_string(required));
  }
  for (std::size_t i = 1; i < m.transitions.size(); ++i) {
    if (!transition_order_less(m.transitions[i - 1], m.transitions[i])) {
      add("UNSORTED_TRANSITIONS", "transitions must be in strictly increasing key order, key " +
                                      transition_key(m.transitions[i]) + " follows " +
                                      transition_key(m.transitions[i - 1]));
      break;
    }
  }
  return report;
}

inline std::string encode(const Machine& m) {
  ValidityReport report = validate(m);
  if (!report.ok()) throw InvalidMachine(std::move(report));
  std::string s = "(";
  s += binary_numeral(m.states);
  s += ',';
  s += binary_numeral(m.input_symbols);
  s += ',';
  s += binary_numeral(m.tape_symbols);
  s += ",(";
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    if (i > 0) s += ',';
    s += '(';
    s += binary_numeral(t.from_state);
    s += ',';
    s += binary_numeral(t.read);
    s += ',';
    s += binary_numeral(t.to_state);
    s += ',';
    s += binary_numeral(t.write);
    s += ',';
    s += t.move == Move::Right ? '1' : '0';
    s += ')';
  }
  s += "),(";
  for (std::size_t i = 0; i < m.finals.size(); ++i) {
    if (i > 0) s += ',';
    s += binary_numeral(m.finals[i]);
  }
  s += "))";
  return s;
}

namespace detail {

class EncodingParser {
 public:
  explicit EncodingParser(std::string_view text) : text_(text) {}

  Machine parse() {
    expect('(');
    const std::uint64_t states = number("a state count numeral");
    expect(',');
    const std::uint64_t input_symbols = number("an input alphabet numeral");
    expect(',');
    const std::uint64_t tape_symbols = number("a tape alphabet numeral");
    expect(',');
    expect('(');
    std::vector<RawTransition> transitions;
    transitions.push_back(transition());
    while (peek() == ',') {
      ++pos_;
      transitions.push_back(transition());
    }
    expect(')');
    expect(',');
    expect('(');
    std::vector<std::uint64_t> finals;
    finals.push_back(number("a final state numeral"));
    while (peek() == ',') {
      ++pos_;
      finals.push_back(number("a final state numeral"));
    }
    expect(')');
    expect(')');
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");

    // grammar done; now the numerals have to fit the machine fields
    Machine m;
    m.states = narrow(states, "state count");
    m.input_symbols = narrow(input_symbols, "input alphabet size");
    m.tape_symbols = narrow(tape_symbols, "tape alphabet size");
    for (const RawTransition& t : transitions)
      m.transitions.push_back({narrow(t.from_state, "transition state"),
                               narrow(t.read, "transition symbol"),
                               narrow(t.to_state, "transition state"),
                               narrow(t.write, "transition symbol"),
                               t.right ? Move::Right : Move::Left});
    for (const std::uint64_t f : finals) m.finals.push_back(narrow(f, "final state"));
    return m;
  }

 private:
  struct RawTransition {
    std::uint64_t from_state, read, to_state, write;
    bool right;
  };

  static constexpr std::uint64_t kSaturated = std::uint64_t{1} << 33;

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) throw SyntaxError(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  std::uint64_t number(const std::string& what) {
    const char first = peek();
    if (first == '0') {
      ++pos_;
      return 0;
    }
    if (first != '1') throw SyntaxError(pos_, what);
    ++pos_;
    std::uint64_t value = 1;
    while (peek() == '0' || peek() == '1') {
      value = value >= kSaturated ? kSaturated : value * 2 + (text_[pos_] - '0');
      ++pos_;
    }
    return value;
  }

  bool bit() {
    const char c = peek();
    if (c != '0' && c != '1') throw SyntaxError(pos_, "a move bit");
    ++pos_;
    return c == '1';
  }

  RawTransition transition() {
    expect('(');
    RawTransition t{};
    t.from_state = number("a state numeral");
    expect(',');
    t.read = number("a symbol numeral");
    expect(',');
    t.to_state = number("a state numeral");
    expect(',');
    t.write = number("a symbol numeral");
    expect(',');
    t.right = bit();
    expect(')');
    return t;
  }

  static std::uint32_t narrow(std::uint64_t value, const std::string& what) {
    if (value > std::numeric_limits<std::uint32_t>::max()) {
      ValidityReport report;
      report.violations.push_back({"NUMERAL_RANGE", what + " does not fit 32 bits"});
      throw SemanticError(std::move(report));
    }
    return static_cast<std::uint32_t>(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Grammar-only parse; the result may still violate machine invariants.
inline Machine parse_encoding(std::string_view text) {
  return detail::EncodingParser(text).parse();
}

// Parses and validates. Accepted strings are exactly the canonical encodings:
// encode(decode(s)) == s and decode(encode(m)) == m.
inline Machine decode(std::string_view text) {
  Machine m = parse_encoding(text);
  ValidityReport report = validate(m);
  if (!report.ok()) throw SemanticError(std::move(report));
  return m;
}

// Character-wise substitution onto base-5 digits. Works on any string over
// the encoding alphabet, full encodings and fragments alike.
inline std::string to_number(std::string_view encoding) {
  std::string digits;
  digits.reserve(encoding.size());
  for (std::size_t i = 0; i < encoding.size(); ++i) {
    switch (encoding[i]) {
      case '0': digits.push_back('0'); break;
      case '1': digits.push_back('1'); break;
      case '(': digits.push_back('2'); break;
      case ')': digits.push_back('3'); break;
      case ',': digits.push_back('4'); break;
      default: throw IllegalCharacter(encoding[i], i);
    }
  }
  return digits;
}

inline std::string from_number(std::string_view digits) {
  std::string encoding;
  encoding.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    switch (digits[i]) {
      case '0': encoding.push_back('0'); break;
      case '1': encoding.push_back('1'); break;
      case '2': encoding.push_back('('); break;
      case '3': encoding.push_back(')'); break;
      case '4': encoding.push_back(','); break;
      default: throw IllegalDigit(digits[i], i);
    }
  }
  return encoding;
}

inline std::string number_of(const Machine& m) { return to_number(encode(m)); }

}  // namespace tmlab
