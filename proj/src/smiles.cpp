//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "polycomplex/error.hpp"

namespace polycomplex {

std::vector<std::vector<std::size_t>> MolecularGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(atoms.size());
  for (const auto &bond : bonds) {
    adj[bond.a].push_back(bond.b);
    adj[bond.b].push_back(bond.a);
  }
  return adj;
}

int AtomInventory::total() const noexcept {
  int n = 0;
  for (const auto &e : entries)
    n += e.count;
  return n;
}

std::vector<ElementRecord> AtomInventory::expand() const {
  std::vector<ElementRecord> out;
  out.reserve(static_cast<std::size_t>(total()));
  for (const auto &e : entries)
    out.insert(out.end(), static_cast<std::size_t>(e.count), e.element);
  return out;
}

void AtomInventory::add(const ElementRecord &record, int count) {
  if (count <= 0)
    return;
  auto it = std::lower_bound(entries.begin(), entries.end(), record,
                             [](const InventoryEntry &e, const ElementRecord &r) { return e.element < r; });
  if (it != entries.end() && it->element == record)
    it->count += count;
  else
    entries.insert(it, InventoryEntry{record, count});
}

std::map<std::string, int> AtomInventory::element_counts() const {
  std::map<std::string, int> counts;
  for (const auto &e : entries)
    counts[e.element.symbol] += e.count;
  return counts;
}

namespace {

bool is_organic_aromatic(char c) {
  return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

std::string capitalise(std::string_view s) {
  std::string out(s);
  if (!out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  MolecularGraph run() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(') {
        if (!prev_)
          fail(ErrorCode::DanglingBranch, "branch opened before any atom");
        if (pending_)
          fail(ErrorCode::DanglingBond, "bond symbol before branch");
        branches_.push_back({*prev_, pos_});
        ++pos_;
        branch_fresh_ = true;
      } else if (c == ')') {
        if (branches_.empty())
          fail(ErrorCode::DanglingBranch, "unmatched ')'");
        if (pending_)
          fail(ErrorCode::DanglingBond, "bond symbol at end of branch");
        if (branch_fresh_)
          fail(ErrorCode::DanglingBranch, "empty branch");
        prev_ = branches_.back().atom;
        branches_.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (pending_)
          fail(ErrorCode::DanglingBond, "bond symbol before '.'");
        if (!prev_ || branch_fresh_)
          fail(ErrorCode::DanglingBond, "'.' without a preceding atom");
        if (!branches_.empty())
          fail(ErrorCode::DanglingBranch, "'.' inside a branch");
        prev_.reset();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\') {
        if (pending_)
          fail(ErrorCode::DanglingBond, "two bond symbols in a row");
        if (!prev_)
          fail(ErrorCode::DanglingBond, "bond symbol without a preceding atom");
        pending_ = bond_of(c);
        pending_pos_ = pos_;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        ring_closure();
      } else if (c == '[') {
        bracket_atom();
      } else {
        organic_atom();
      }
    }
    if (!branches_.empty())
      fail(ErrorCode::DanglingBranch, "unclosed '('", branches_.back().pos);
    if (pending_)
      fail(ErrorCode::DanglingBond, "bond symbol at end of input", pending_pos_);
    if (!rings_.empty()) {
      std::size_t first = s_.size();
      for (const auto &[num, open] : rings_)
        first = std::min(first, open.pos);
      fail(ErrorCode::UnmatchedRingClosure, "ring bond opened but never closed", first);
    }
    return std::move(g_);
  }

private:
  struct Branch {
    std::size_t atom;
    std::size_t pos;
  };
  struct RingOpen {
    std::size_t atom;
    std::optional<BondOrder> order;
    std::size_t pos;
  };

  [[noreturn]] void fail(ErrorCode code, const std::string &msg) { fail(code, msg, pos_); }
  [[noreturn]] void fail(ErrorCode code, const std::string &msg, std::size_t at) {
    throw Error(code, msg + " at offset " + std::to_string(at), at);
  }

  static std::optional<BondOrder> bond_of(char c) {
    switch (c) {
    case '=':
      return BondOrder::Double;
    case '#':
      return BondOrder::Triple;
    case ':':
      return BondOrder::Aromatic;
    default:
      return BondOrder::Single;  // '-', '/', '\'
    }
  }

  bool has_bond(std::size_t a, std::size_t b) const {
    for (const auto &bond : g_.bonds)
      if ((bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
        return true;
    return false;
  }

  BondOrder implied(std::size_t a, std::size_t b) const {
    return g_.atoms[a].aromatic && g_.atoms[b].aromatic ? BondOrder::Aromatic : BondOrder::Single;
  }

  void add_atom(GraphAtom atom) {
    std::size_t idx = g_.atoms.size();
    g_.atoms.push_back(std::move(atom));
    if (prev_) {
      g_.bonds.push_back({*prev_, idx, pending_ ? *pending_ : implied(*prev_, idx)});
    }
    pending_.reset();
    prev_ = idx;
    branch_fresh_ = false;
  }

  void ring_closure() {
    std::size_t start = pos_;
    if (!prev_ || branch_fresh_)
      fail(ErrorCode::UnmatchedRingClosure, "ring bond without a preceding atom");
    int num = 0;
    if (s_[pos_] == '%') {
      ++pos_;
      if (pos_ + 2 > s_.size() ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
        fail(ErrorCode::InvalidCharacter, "'%' must be followed by two digits", start);
      num = (s_[pos_] - '0') * 10 + (s_[pos_ + 1] - '0');
      pos_ += 2;
    } else {
      num = s_[pos_] - '0';
      ++pos_;
    }
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_.emplace(num, RingOpen{*prev_, pending_, start});
      pending_.reset();
      return;
    }
    RingOpen open = it->second;
    rings_.erase(it);
    std::size_t here = *prev_;
    if (open.atom == here)
      fail(ErrorCode::UnmatchedRingClosure, "ring bond closes on its own atom", start);
    if (has_bond(open.atom, here))
      fail(ErrorCode::UnmatchedRingClosure, "ring bond duplicates an existing bond", start);
    if (open.order && pending_ && *open.order != *pending_)
      fail(ErrorCode::UnmatchedRingClosure, "conflicting ring bond orders", start);
    BondOrder order = open.order ? *open.order : pending_ ? *pending_ : implied(open.atom, here);
    g_.bonds.push_back({open.atom, here, order});
    pending_.reset();
  }

  void organic_atom() {
    char c = s_[pos_];
    GraphAtom atom;
    atom.position = pos_;
    if (c == 'C' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'l') {
      atom.symbol = "Cl";
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'r') {
      atom.symbol = "Br";
      pos_ += 2;
    } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P' || c == 'S' || c == 'F' ||
               c == 'I' || c == 'H') {
      atom.symbol = std::string(1, c);
      ++pos_;
    } else if (is_organic_aromatic(c)) {
      atom.symbol = capitalise(std::string_view(&s_[pos_], 1));
      atom.aromatic = true;
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      fail(ErrorCode::UnknownElement, std::string("element '") + c + "' must be written in brackets");
    } else {
      fail(ErrorCode::InvalidCharacter, "unexpected character");
    }
    add_atom(std::move(atom));
  }

  int read_number() {
    int value = 0;
    int digits = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (++digits > 6)
        fail(ErrorCode::InvalidCharacter, "number too long");
      value = value * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return value;
  }

  bool at_digit() const {
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  void bracket_atom() {
    std::size_t open = pos_;
    auto need = [&] {
      if (pos_ >= s_.size())
        fail(ErrorCode::UnclosedBracket, "unclosed '['", open);
    };
    ++pos_;
    GraphAtom atom;
    atom.bracket = true;
    atom.position = open;
    atom.explicit_h = 0;
    need();
    if (at_digit())
      atom.isotope = read_number();
    need();
    char c = s_[pos_];
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (pos_ + 1 < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_ + 1])) &&
          atomic_number_of(s_.substr(pos_, 2))) {
        atom.symbol = std::string(s_.substr(pos_, 2));
        pos_ += 2;
      } else if (atomic_number_of(s_.substr(pos_, 1))) {
        atom.symbol = std::string(1, c);
        ++pos_;
      } else {
        fail(ErrorCode::UnknownElement, "unknown element in bracket atom");
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      static constexpr std::array<std::string_view, 3> two{"se", "as", "te"};
      bool matched = false;
      for (auto sym : two) {
        if (s_.substr(pos_, 2) == sym) {
          atom.symbol = capitalise(sym);
          pos_ += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (!is_organic_aromatic(c))
          fail(ErrorCode::UnknownElement, "unknown aromatic element in bracket atom");
        atom.symbol = capitalise(s_.substr(pos_, 1));
        ++pos_;
      }
      atom.aromatic = true;
    } else if (c == '*') {
      fail(ErrorCode::UnknownElement, "wildcard atoms are not supported");
    } else if (c == ']') {
      fail(ErrorCode::UnknownElement, "empty bracket atom");
    } else {
      fail(ErrorCode::InvalidCharacter, "unexpected character in bracket atom");
    }
    // chirality: @, @@, @TH1, @AL2, @SP3, @TB12, @OH25
    need();
    if (s_[pos_] == '@') {
      ++pos_;
      need();
      if (s_[pos_] == '@') {
        ++pos_;
      } else if (std::isupper(static_cast<unsigned char>(s_[pos_])) && pos_ + 1 < s_.size() &&
                 std::isupper(static_cast<unsigned char>(s_[pos_ + 1]))) {
        pos_ += 2;
        if (!at_digit())
          fail(ErrorCode::InvalidCharacter, "chirality class needs a number");
        read_number();
      }
    }
    need();
    if (s_[pos_] == 'H') {
      ++pos_;
      atom.explicit_h = at_digit() ? read_number() : 1;
    }
    need();
    if (s_[pos_] == '+' || s_[pos_] == '-') {
      char sign = s_[pos_];
      int mult = sign == '+' ? 1 : -1;
      ++pos_;
      int magnitude = 1;
      if (at_digit()) {
        magnitude = read_number();
      } else {
        while (pos_ < s_.size() && s_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.charge = mult * magnitude;
    }
    need();
    if (s_[pos_] == ':') {
      ++pos_;
      if (!at_digit())
        fail(ErrorCode::InvalidCharacter, "atom class needs a number");
      read_number();
    }
    need();
    if (s_[pos_] != ']')
      fail(ErrorCode::InvalidCharacter, "unexpected character in bracket atom");
    ++pos_;
    // validate against the element table now so the offset is reported
    try {
      (void)lookup(atom.symbol, atom.isotope, atom.charge);
    } catch (const Error &e) {
      fail(e.code(), e.what(), open);
    }
    add_atom(std::move(atom));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  MolecularGraph g_;
  std::optional<std::size_t> prev_;
  std::optional<BondOrder> pending_;
  std::size_t pending_pos_ = 0;
  bool branch_fresh_ = false;
  std::vector<Branch> branches_;
  std::map<int, RingOpen> rings_;
};

int bond_valence(BondOrder order) { return order == BondOrder::Aromatic ? 1 : static_cast<int>(order); }

std::vector<int> allowed_valences(std::string_view symbol) {
  if (symbol == "B")
    return {3};
  if (symbol == "C")
    return {4};
  if (symbol == "N" || symbol == "P")
    return {3, 5};
  if (symbol == "O")
    return {2};
  if (symbol == "S")
    return {2, 4, 6};
  if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I" || symbol == "H")
    return {1};
  return {};
}

}  // namespace

MolecularGraph parse_smiles(std::string_view smiles) {
  auto first = smiles.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    throw Error(ErrorCode::EmptyInput, "empty SMILES string", 0);
  auto last = smiles.find_last_not_of(" \t\r\n");
  smiles = smiles.substr(first, last - first + 1);
  return Parser(smiles).run();
}

std::vector<int> implicit_hydrogens(const MolecularGraph &graph) {
  std::vector<int> valence(graph.atoms.size(), 0);
  std::vector<bool> multiple(graph.atoms.size(), false);
  for (const auto &bond : graph.bonds) {
    int v = bond_valence(bond.order);
    valence[bond.a] += v;
    valence[bond.b] += v;
    if (bond.order == BondOrder::Double || bond.order == BondOrder::Triple)
      multiple[bond.a] = multiple[bond.b] = true;
  }
  std::vector<int> hydrogens(graph.atoms.size(), 0);
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const auto &atom = graph.atoms[i];
    if (atom.bracket)
      continue;
    int v = valence[i];
    auto allowed = allowed_valences(atom.symbol);
    int h = -1;
    if (atom.aromatic) {
      if (atom.symbol == "C" || atom.symbol == "B") {
        int base = atom.symbol == "C" ? 4 : 3;
        h = base - v - (multiple[i] ? 0 : 1);
      } else if (atom.symbol == "N" || atom.symbol == "P") {
        h = v <= 5 ? std::max(0, 2 - v) : -1;
      } else {  // O, S
        h = v <= allowed.back() ? 0 : -1;
      }
    } else {
      for (int a : allowed) {
        if (a >= v) {
          h = a - v;
          break;
        }
      }
    }
    if (h < 0)
      throw Error(ErrorCode::ValenceOverflow,
                  "atom " + atom.symbol + " at offset " + std::to_string(atom.position) +
                      " has bond valence " + std::to_string(v) + " beyond its allowed valences",
                  atom.position);
    hydrogens[i] = h;
  }
  return hydrogens;
}

AtomInventory atom_inventory(const MolecularGraph &graph, bool include_hydrogens) {
  auto implicit = implicit_hydrogens(graph);
  AtomInventory inventory;
  const ElementRecord hydrogen = lookup("H");
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const auto &atom = graph.atoms[i];
    ElementRecord record = lookup(atom.symbol, atom.isotope, atom.charge);
    if (record.atomic_number != 1 || include_hydrogens)
      inventory.add(record);
    if (include_hydrogens)
      inventory.add(hydrogen, atom.bracket ? atom.explicit_h.value_or(0) : implicit[i]);
  }
  return inventory;
}

std::string hill_formula(const AtomInventory &inventory) {
  auto counts = inventory.element_counts();
  std::string out;
  auto emit = [&](const std::string &sym, int n) {
    out += sym;
    if (n > 1)
      out += std::to_string(n);
  };
  bool has_carbon = counts.count("C") > 0;
  if (has_carbon) {
    emit("C", counts["C"]);
    counts.erase("C");
    if (counts.count("H")) {
      emit("H", counts["H"]);
      counts.erase("H");
    }
  }
  for (const auto &[sym, n] : counts)  // std::map iterates alphabetically
    emit(sym, n);
  return out;
}

}  // namespace polycomplex
