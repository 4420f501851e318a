//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>

#include "polycomplex/error.hpp"
#include "polycomplex/smiles.hpp"

namespace polycomplex {
namespace {

using Counts = std::map<std::string, long>;

class FormulaParser {
public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Counts run() {
    Counts total;
    while (true) {
      long mult = at_digit() ? read_count() : 1;
      Counts part = group(0);
      for (const auto &[sym, n] : part)
        total[sym] += n * mult;
      if (pos_ >= s_.size())
        break;
      if (s_[pos_] == '.' || s_[pos_] == '*') {
        ++pos_;
        if (pos_ >= s_.size())
          throw Error(ErrorCode::InvalidCharacter, "formula ends with a separator", pos_);
        continue;
      }
      throw Error(ErrorCode::DanglingBranch, "unmatched closing bracket in formula", pos_);
    }
    return total;
  }

private:
  bool at_digit() const {
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  long read_count() {
    long v = 0;
    int digits = 0;
    while (at_digit()) {
      if (++digits > 6)
        throw Error(ErrorCode::InvalidCharacter, "count too large in formula", pos_);
      v = v * 10 + (s_[pos_++] - '0');
    }
    return v;
  }

  Counts group(int depth) {
    Counts counts;
    bool any = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(' || c == '[') {
        char close = c == '(' ? ')' : ']';
        std::size_t open = pos_++;
        Counts inner = group(depth + 1);
        if (pos_ >= s_.size() || s_[pos_] != close)
          throw Error(ErrorCode::DanglingBranch, "unclosed bracket in formula", open);
        ++pos_;
        long mult = at_digit() ? read_count() : 1;
        for (const auto &[sym, n] : inner)
          counts[sym] += n * mult;
        any = true;
      } else if (c == ')' || c == ']' || c == '.' || c == '*') {
        break;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        std::size_t start = pos_++;
        while (pos_ < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
        std::string sym(s_.substr(start, pos_ - start));
        if (!atomic_number_of(sym))
          throw Error(ErrorCode::UnknownElement, "unknown element '" + sym + "' in formula", start);
        long n = at_digit() ? read_count() : 1;
        counts[sym] += n;
        any = true;
      } else {
        throw Error(ErrorCode::InvalidCharacter, "unexpected character in formula", pos_);
      }
    }
    if (!any)
      throw Error(depth == 0 ? ErrorCode::EmptyInput : ErrorCode::DanglingBranch,
                  "empty formula group", pos_);
    return counts;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AtomInventory parse_formula(std::string_view formula) {
  auto first = formula.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    throw Error(ErrorCode::EmptyInput, "empty formula", 0);
  auto last = formula.find_last_not_of(" \t\r\n");
  Counts counts = FormulaParser(formula.substr(first, last - first + 1)).run();
  AtomInventory inventory;
  for (const auto &[sym, n] : counts) {
    if (n > 100000)
      throw Error(ErrorCode::InvalidArgument, "formula atom count too large for " + sym);
    inventory.add(lookup(sym), static_cast<int>(n));
  }
  return inventory;
}

}  // namespace polycomplex
