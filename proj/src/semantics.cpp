#include "mediator/semantics.hpp"

#include <algorithm>
#include <map>

namespace mediator {

Side other(Side s) {
    return s == Side::Left ? Side::Right : Side::Left;
}

char side_letter(Side s) {
    return s == Side::Left ? 'L' : 'R';
}

namespace {

CorrespondenceKind derive_kind(const std::vector<ActionLabel>& left,
                               const std::vector<ActionLabel>& right) {
    if (left.size() == 1 && right.size() == 1)
        return left[0] == right[0] ? CorrespondenceKind::Identity
                                   : CorrespondenceKind::Rename;
    return left.size() == 1 ? CorrespondenceKind::Split : CorrespondenceKind::Merge;
}

bool is_label_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.';
}

struct MapScanner {
    std::string_view text;
    int line_no;
    std::size_t pos = 0;

    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no, static_cast<int>(pos) + 1);
    }

    bool at_end() {
        skip_spaces();
        return pos >= text.size();
    }

    bool try_literal(std::string_view lit) {
        skip_spaces();
        if (text.substr(pos, lit.size()) != lit)
            return false;
        pos += lit.size();
        return true;
    }

    ActionLabel label() {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() && is_label_char(text[pos]))
            ++pos;
        if (pos == start)
            fail("expected a message label");
        return ActionLabel{std::string(text.substr(start, pos - start))};
    }

    std::vector<ActionLabel> label_list() {
        std::vector<ActionLabel> out{label()};
        while (try_literal(","))
            out.push_back(label());
        return out;
    }
};

} // namespace

CorrespondenceMap parse_map(std::string_view text) {
    CorrespondenceMap map;
    std::map<ActionLabel, int> seen_left, seen_right;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);
        bool blank = raw.find_first_not_of(" \t") == std::string_view::npos;
        if (!blank) {
            MapScanner s{raw, line_no};
            if (s.try_literal("producible")) {
                for (auto& l : s.label_list())
                    map.producible.insert(std::move(l));
            } else {
                Correspondence entry;
                entry.left = s.label_list();
                if (!s.try_literal("<->"))
                    s.fail("expected '<->'");
                entry.right = s.label_list();
                if (entry.left.size() > 1 && entry.right.size() > 1)
                    s.fail("many-to-many correspondence is not allowed");
                for (const auto& l : entry.left)
                    if (++seen_left[l] > 1)
                        s.fail("label '" + l.name + "' appears twice on the left side");
                for (const auto& r : entry.right)
                    if (++seen_right[r] > 1)
                        s.fail("label '" + r.name + "' appears twice on the right side");
                entry.kind = derive_kind(entry.left, entry.right);
                map.entries.push_back(std::move(entry));
            }
            if (!s.at_end())
                s.fail("unexpected trailing input");
        }
        if (end == text.size())
            break;
        start = end + 1;
    }
    return map;
}

std::optional<Correspondence> find_entry(const CorrespondenceMap& map,
                                         const ActionLabel& label, Side side) {
    for (const auto& entry : map.entries) {
        const auto& labels = side == Side::Left ? entry.left : entry.right;
        if (std::find(labels.begin(), labels.end(), label) != labels.end())
            return entry;
    }
    return std::nullopt;
}

Correspondence lookup(const CorrespondenceMap& map, const ActionLabel& label, Side side) {
    if (auto entry = find_entry(map, label, side))
        return *entry;
    return Correspondence{{label}, {label}, CorrespondenceKind::Identity};
}

bool is_producible(const CorrespondenceMap& map, const ActionLabel& label) {
    return map.producible.count(label) != 0;
}

CorrespondenceMap mirrored(const CorrespondenceMap& map) {
    CorrespondenceMap out;
    out.producible = map.producible;
    for (const auto& entry : map.entries) {
        Correspondence swapped{entry.right, entry.left,
                               derive_kind(entry.right, entry.left)};
        out.entries.push_back(std::move(swapped));
    }
    return out;
}

bool corresponds_one_to_one(const CorrespondenceMap& map,
                            const ActionLabel& left, const ActionLabel& right) {
    auto left_entry = find_entry(map, left, Side::Left);
    auto right_entry = find_entry(map, right, Side::Right);
    if (left_entry || right_entry) {
        // A declared entry overrides name equality for its labels.
        if (!left_entry || !right_entry || *left_entry != *right_entry)
            return false;
        return left_entry->left.size() == 1 && left_entry->right.size() == 1;
    }
    return left == right;
}

} // namespace mediator
