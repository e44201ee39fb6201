#include "dpio/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "dpio/util.hpp"

namespace dpio {

Grammar::Grammar(std::vector<std::string> variables, std::vector<BinaryRule> binary,
                 std::vector<TerminalRule> terminal, int start, bool start_epsilon)
    : variables_(std::move(variables)), binary_(std::move(binary)), terminal_(std::move(terminal)),
      start_(start), start_epsilon_(start_epsilon) {
    std::map<std::pair<int, int>, int> by_rhs;
    for (const auto& r : binary_) {
        auto key = std::make_pair(r.rhs_first, r.rhs_second);
        auto it = by_rhs.find(key);
        if (it == by_rhs.end()) {
            it = by_rhs.emplace(key, static_cast<int>(groups_.size())).first;
            groups_.push_back({variable_count() + static_cast<int>(groups_.size()), r.rhs_first,
                               r.rhs_second, {}});
        }
        auto& lhs = groups_[it->second].lhs;
        if (std::find(lhs.begin(), lhs.end(), r.lhs) == lhs.end()) lhs.push_back(r.lhs);
    }
}

std::vector<RhsGroup> gamma_groups(const Grammar& g) { return g.groups(); }

namespace {

bool is_variable_token(const std::string& tok) {
    if (tok.empty() || !std::isupper(static_cast<unsigned char>(tok[0]))) return false;
    return std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '\'';
    });
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
    std::vector<std::string> variables;
    std::map<std::string, int> var_index;
    auto intern = [&](const std::string& name) {
        auto it = var_index.find(name);
        if (it != var_index.end()) return it->second;
        int id = static_cast<int>(variables.size());
        variables.push_back(name);
        var_index.emplace(name, id);
        return id;
    };

    std::vector<BinaryRule> binary;
    std::vector<TerminalRule> terminal;
    int start = -1;
    bool start_epsilon = false;
    std::vector<std::pair<int, std::string>> epsilon_lines;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto at = [&](const std::string& what) { return what + " at line " + std::to_string(lineno); };

        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() < 2 || toks[1] != "->") throw SyntaxError(at("expected `LHS -> ...`"));
        if (!is_variable_token(toks[0])) throw NotCNF(at("left-hand side must be a variable"));
        int lhs = intern(toks[0]);
        if (start < 0) start = lhs;

        if (toks.size() == 2) {
            // Epsilon rule; only valid for the start symbol, checked after
            // the whole file fixes what the start symbol is.
            epsilon_lines.emplace_back(lineno, toks[0]);
            if (lhs == start) start_epsilon = true;
            continue;
        }
        if (toks.size() == 3) {
            const std::string& rhs = toks[2];
            auto cps = utf8_decode(rhs);
            if (cps.size() >= 3 && cps.front() == U'\'' && cps.back() == U'\'') {
                if (cps.size() != 3) throw NotCNF(at("terminal must be a single character"));
                terminal.push_back({lhs, cps[1]});
                continue;
            }
            throw NotCNF(at("unary right-hand side must be a quoted terminal"));
        }
        if (toks.size() == 4) {
            if (!is_variable_token(toks[2]) || !is_variable_token(toks[3]))
                throw NotCNF(at("binary right-hand side must name two variables"));
            binary.push_back({lhs, intern(toks[2]), intern(toks[3])});
            continue;
        }
        throw SyntaxError(at("too many tokens"));
    }

    if (start < 0) throw SyntaxError("grammar has no rules");
    for (const auto& [ln, name] : epsilon_lines)
        if (var_index[name] != start)
            throw NotCNF("epsilon rule on non-start variable at line " + std::to_string(ln));

    return Grammar(std::move(variables), std::move(binary), std::move(terminal), start, start_epsilon);
}

}  // namespace dpio
