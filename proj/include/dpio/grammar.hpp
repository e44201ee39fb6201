#pragma once

// CNF context-free grammars. File format: one rule per line, either
// `LHS -> X Y` (binary) or `LHS -> 'c'` (terminal, single-quoted single
// character); `LHS ->` declares the start-epsilon rule; `#` starts a
// comment. The first rule's left-hand side is the start symbol.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dpio/error.hpp"

namespace dpio {

struct BinaryRule {
    int lhs;
    int rhs_first;
    int rhs_second;
};

struct TerminalRule {
    int lhs;
    char32_t terminal;
};

// All binary rules sharing one distinct right-hand side, folded behind a
// placeholder plane index (>= |V|, disjoint from variable indices).
struct RhsGroup {
    int placeholder;
    int rhs_first;
    int rhs_second;
    std::vector<int> lhs;
};

class Grammar {
  public:
    Grammar(std::vector<std::string> variables, std::vector<BinaryRule> binary,
            std::vector<TerminalRule> terminal, int start, bool start_epsilon);

    int variable_count() const { return static_cast<int>(variables_.size()); }
    const std::vector<std::string>& variable_names() const { return variables_; }
    const std::string& variable_name(int v) const { return variables_[v]; }
    const std::vector<BinaryRule>& binary_rules() const { return binary_; }
    const std::vector<TerminalRule>& terminal_rules() const { return terminal_; }
    int start() const { return start_; }
    bool start_epsilon() const { return start_epsilon_; }

    // One group per distinct binary right-hand side.
    const std::vector<RhsGroup>& groups() const { return groups_; }
    int gamma() const { return static_cast<int>(groups_.size()); }

    // Total plane count for the bit-packed tables: |V| variables followed by
    // gamma placeholders.
    int plane_count() const { return variable_count() + gamma(); }

  private:
    std::vector<std::string> variables_;
    std::vector<BinaryRule> binary_;
    std::vector<TerminalRule> terminal_;
    int start_;
    bool start_epsilon_;
    std::vector<RhsGroup> groups_;
};

Grammar parse_grammar(std::string_view text);

// Exposed for the group-structure checks; identical to grammar.groups().
std::vector<RhsGroup> gamma_groups(const Grammar& g);

}  // namespace dpio
