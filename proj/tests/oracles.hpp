#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Test-only brute-force oracle: enumerates every string the encoding grammar
// derives, up to a length bound, by walking the grammar with a length budget.
// It shares no code with the machine-space enumerator it is used to check.
//
//   machine := "(" num "," num "," num "," "(" trans ("," trans)* ")"
//                  "," "(" num ("," num)* ")" ")"
//   trans   := "(" num "," num "," num "," num "," bit ")"
//   num     := "0" | "1" ("0"|"1")*
//   bit     := "0" | "1"

namespace tmlab::oracles {

namespace detail {

enum class Part : char { Literal, Num, Bit };

struct Element {
  Part part;
  char literal;
};

inline void emit_nums(std::size_t width, std::string& prefix,
                      const std::function<void(std::string&)>& next) {
  // all binary numerals of exactly `width` characters, in lexicographic order
  if (width == 1) {
    prefix.push_back('0');
    next(prefix);
    prefix.back() = '1';
    next(prefix);
    prefix.pop_back();
    return;
  }
  const std::uint64_t lo = std::uint64_t{1} << (width - 1);
  for (std::uint64_t v = lo; v < lo * 2; ++v) {
    const std::size_t at = prefix.size();
    for (std::size_t bit = width; bit-- > 0;)
      prefix.push_back((v >> bit) & 1 ? '1' : '0');
    next(prefix);
    prefix.resize(at);
  }
}

inline void walk(const std::vector<Element>& elements, std::size_t index, std::string& prefix,
                 std::size_t budget, const std::vector<std::size_t>& min_suffix,
                 const std::function<void(const std::string&)>& sink) {
  if (index == elements.size()) {
    sink(prefix);
    return;
  }
  const Element& e = elements[index];
  if (e.part == Part::Literal) {
    if (budget < 1) return;
    prefix.push_back(e.literal);
    walk(elements, index + 1, prefix, budget - 1, min_suffix, sink);
    prefix.pop_back();
    return;
  }
  if (e.part == Part::Bit) {
    if (budget < 1) return;
    for (const char c : {'0', '1'}) {
      prefix.push_back(c);
      walk(elements, index + 1, prefix, budget - 1, min_suffix, sink);
      prefix.pop_back();
    }
    return;
  }
  // numeral: try every width the remaining budget allows
  const std::size_t rest = min_suffix[index + 1];
  for (std::size_t width = 1; width + rest <= budget; ++width) {
    emit_nums(width, prefix, [&](std::string& p) {
      walk(elements, index + 1, p, budget - width, min_suffix, sink);
    });
  }
}

inline void append_literals(std::vector<Element>& elements, const char* text) {
  for (const char* c = text; *c != '\0'; ++c) elements.push_back({Part::Literal, *c});
}

}  // namespace detail

// Calls `sink` once per grammatical string of length <= max_length.
inline void for_each_grammatical(std::size_t max_length,
                                 const std::function<void(const std::string&)>& sink) {
  using detail::Element;
  using detail::Part;

  // fix the transition count and final-state count, then walk the numerals
  for (std::size_t transitions = 1; 25 + 12 * (transitions - 1) <= max_length; ++transitions) {
    for (std::size_t finals = 1; 25 + 12 * (transitions - 1) + 2 * (finals - 1) <= max_length;
         ++finals) {
      std::vector<Element> elements;
      detail::append_literals(elements, "(");
      for (int i = 0; i < 3; ++i) {
        elements.push_back({Part::Num, 0});
        detail::append_literals(elements, ",");
      }
      detail::append_literals(elements, "(");
      for (std::size_t t = 0; t < transitions; ++t) {
        if (t > 0) detail::append_literals(elements, ",");
        detail::append_literals(elements, "(");
        for (int i = 0; i < 4; ++i) {
          elements.push_back({Part::Num, 0});
          detail::append_literals(elements, ",");
        }
        elements.push_back({Part::Bit, 0});
        detail::append_literals(elements, ")");
      }
      detail::append_literals(elements, "),(");
      for (std::size_t f = 0; f < finals; ++f) {
        if (f > 0) detail::append_literals(elements, ",");
        elements.push_back({Part::Num, 0});
      }
      detail::append_literals(elements, "))");

      std::vector<std::size_t> min_suffix(elements.size() + 1, 0);
      for (std::size_t i = elements.size(); i-- > 0;)
        min_suffix[i] = min_suffix[i + 1] + 1;  // every part is at least one character

      std::string prefix;
      detail::walk(elements, 0, prefix, max_length, min_suffix, sink);
    }
  }
}

}  // namespace tmlab::oracles
