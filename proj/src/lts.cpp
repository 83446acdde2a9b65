#include "mediator/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace mediator {

char direction_sigil(Direction d) {
    return d == Direction::Send ? '!' : '?';
}

std::string Action::render() const {
    std::string out;
    out.push_back(direction_sigil(direction));
    out += label.name;
    return out;
}

std::strong_ordering Action::operator<=>(const Action& other) const {
    // Send ('!') sorts before Receive ('?'), matching the rendered form.
    if (direction != other.direction)
        return direction == Direction::Send ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
    return label <=> other.label;
}

std::string render_trace(const Trace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0)
            out.push_back(' ');
        out += t[i].render();
    }
    return out;
}

std::strong_ordering Transition::operator<=>(const Transition& other) const {
    if (auto c = source <=> other.source; c != 0)
        return c;
    if (auto c = action.label <=> other.action.label; c != 0)
        return c;
    if (action.direction != other.action.direction)
        return action.direction == Direction::Send ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
    return target <=> other.target;
}

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + msg),
      line(line_), column(column_) {}

namespace {

bool is_ident_char(char c, bool allow_dot) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || (allow_dot && c == '.');
}

// Cursor over one logical line; tracks the column for diagnostics.
struct LineScanner {
    std::string_view text;
    int line_no;
    std::size_t pos = 0;

    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    }

    int column() const { return static_cast<int>(pos) + 1; }

    bool at_end() {
        skip_spaces();
        return pos >= text.size();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no, column());
    }

    std::string ident(const char* what, bool allow_dot = false) {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos], allow_dot))
            ++pos;
        if (pos == start)
            fail(std::string("expected ") + what);
        return std::string(text.substr(start, pos - start));
    }

    bool try_literal(std::string_view lit) {
        skip_spaces();
        if (text.substr(pos, lit.size()) != lit)
            return false;
        pos += lit.size();
        return true;
    }

    void literal(std::string_view lit) {
        if (!try_literal(lit))
            fail("expected '" + std::string(lit) + "'");
    }

    void expect_end() {
        if (!at_end())
            fail("unexpected trailing input");
    }
};

// Comment-stripped, non-blank lines with their 1-based numbers.
std::vector<std::pair<int, std::string_view>> logical_lines(std::string_view text) {
    std::vector<std::pair<int, std::string_view>> out;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
        if (!blank) {
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            out.emplace_back(line_no, line);
        }
        if (end == text.size())
            break;
        start = end + 1;
    }
    return out;
}

} // namespace

Lts parse_lts(std::string_view text) {
    auto lines = logical_lines(text);
    std::size_t idx = 0;
    auto next_scanner = [&](const char* missing) -> LineScanner {
        if (idx >= lines.size()) {
            int last = lines.empty() ? 1 : lines.back().first;
            throw ParseError(std::string("missing ") + missing, last, 1);
        }
        LineScanner s{lines[idx].second, lines[idx].first};
        ++idx;
        return s;
    };

    Lts lts;

    LineScanner header = next_scanner("'lts' header");
    header.literal("lts");
    lts.name = header.ident("machine name");
    header.expect_end();

    LineScanner init = next_scanner("'initial' line");
    if (!init.try_literal("initial"))
        init.fail("expected 'initial'");
    lts.initial = init.ident("initial state");
    init.expect_end();
    lts.states.insert(lts.initial);

    LineScanner fin = next_scanner("'final' line");
    if (!fin.try_literal("final"))
        fin.fail("expected 'final'");
    lts.finals.insert(fin.ident("final state"));
    while (fin.try_literal(","))
        lts.finals.insert(fin.ident("final state"));
    fin.expect_end();

    while (idx < lines.size()) {
        LineScanner s{lines[idx].second, lines[idx].first};
        ++idx;
        Transition t;
        t.source = s.ident("source state");
        s.literal("->");
        t.target = s.ident("target state");
        s.literal(":");
        s.skip_spaces();
        if (s.try_literal("!"))
            t.action.direction = Direction::Send;
        else if (s.try_literal("?"))
            t.action.direction = Direction::Receive;
        else
            s.fail("expected '!' or '?'");
        t.action.label.name = s.ident("action label", /*allow_dot=*/true);
        s.expect_end();
        if (std::find(lts.transitions.begin(), lts.transitions.end(), t) !=
            lts.transitions.end())
            throw ParseError("duplicate transition '" + t.source + " -> " + t.target +
                                 " : " + t.action.render() + "'",
                             s.line_no, 1);
        lts.states.insert(t.source);
        lts.states.insert(t.target);
        lts.transitions.push_back(t);
    }

    for (const auto& f : lts.finals) {
        if (!lts.states.count(f))
            throw ParseError("final state '" + f +
                                 "' is never introduced by the initial line or a transition",
                             lines.size() >= 3 ? lines[2].first : 1, 1);
    }
    return lts;
}

namespace {

std::map<std::string, std::vector<const Transition*>> by_source(const Lts& lts) {
    std::map<std::string, std::vector<const Transition*>> out;
    for (const auto& t : lts.transitions)
        out[t.source].push_back(&t);
    return out;
}

std::set<std::string> forward_reachable(const Lts& lts) {
    std::set<std::string> seen;
    std::deque<std::string> queue;
    if (lts.states.count(lts.initial)) {
        seen.insert(lts.initial);
        queue.push_back(lts.initial);
    }
    auto succ = by_source(lts);
    while (!queue.empty()) {
        std::string s = queue.front();
        queue.pop_front();
        auto it = succ.find(s);
        if (it == succ.end())
            continue;
        for (const Transition* t : it->second)
            if (seen.insert(t->target).second)
                queue.push_back(t->target);
    }
    return seen;
}

std::set<std::string> backward_reachable_from_finals(const Lts& lts) {
    std::map<std::string, std::vector<std::string>> pred;
    for (const auto& t : lts.transitions)
        pred[t.target].push_back(t.source);
    std::set<std::string> seen;
    std::deque<std::string> queue;
    for (const auto& f : lts.finals)
        if (seen.insert(f).second)
            queue.push_back(f);
    while (!queue.empty()) {
        std::string s = queue.front();
        queue.pop_front();
        auto it = pred.find(s);
        if (it == pred.end())
            continue;
        for (const auto& p : it->second)
            if (seen.insert(p).second)
                queue.push_back(p);
    }
    return seen;
}

} // namespace

std::vector<std::string> validate(const Lts& lts) {
    std::vector<std::string> violations;
    if (lts.name.empty())
        violations.push_back("machine has no name");
    if (!lts.states.count(lts.initial))
        violations.push_back("initial state '" + lts.initial + "' is not a state");
    if (lts.finals.empty())
        violations.push_back("final state set is empty");
    for (const auto& f : lts.finals)
        if (!lts.states.count(f))
            violations.push_back("final state '" + f + "' is not a state");
    for (const auto& t : lts.transitions) {
        if (!lts.states.count(t.source))
            violations.push_back("transition source '" + t.source + "' is not a state");
        if (!lts.states.count(t.target))
            violations.push_back("transition target '" + t.target + "' is not a state");
        if (t.action.label.name.empty())
            violations.push_back("transition '" + t.source + " -> " + t.target +
                                 "' has an empty action label");
    }
    if (!violations.empty())
        return violations; // structural problems make graph checks unreliable

    auto reachable = forward_reachable(lts);
    for (const auto& s : lts.states)
        if (!reachable.count(s))
            violations.push_back("state '" + s + "' is unreachable from the initial state");

    auto coreachable = backward_reachable_from_finals(lts);
    for (const auto& s : lts.states)
        if (reachable.count(s) && !coreachable.count(s))
            violations.push_back("state '" + s + "' cannot reach any final state");

    return violations;
}

std::string serialize_lts(const Lts& lts) {
    std::ostringstream out;
    out << "lts " << lts.name << "\n";
    out << "initial " << lts.initial << "\n";
    out << "final ";
    bool first = true;
    for (const auto& f : lts.finals) {
        if (!first)
            out << ", ";
        out << f;
        first = false;
    }
    out << "\n";
    std::vector<Transition> sorted = lts.transitions;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& t : sorted)
        out << t.source << " -> " << t.target << " : " << t.action.render() << "\n";
    return out.str();
}

std::string export_dot(const Lts& lts) {
    std::ostringstream out;
    out << "digraph " << lts.name << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  __start [shape=point];\n";
    out << "  __start -> \"" << lts.initial << "\";\n";
    for (const auto& f : lts.finals)
        out << "  \"" << f << "\" [shape=doublecircle];\n";
    std::vector<Transition> sorted = lts.transitions;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& t : sorted) {
        out << "  \"" << t.source << "\" -> \"" << t.target << "\" [label=\""
            << t.action.render() << "\"";
        if (t.action.label.name.rfind("L.", 0) == 0)
            out << ", color=royalblue";
        else if (t.action.label.name.rfind("R.", 0) == 0)
            out << ", color=firebrick";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace mediator
