#include "mediator/mismatch.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mediator {

std::string step_kind_name(StepKind k) {
    switch (k) {
    case StepKind::Forward: return "forward";
    case StepKind::Translate: return "translate";
    case StepKind::Consume: return "consume";
    case StepKind::Produce: return "produce";
    case StepKind::Reorder: return "reorder";
    case StepKind::Split: return "split";
    case StepKind::Merge: return "merge";
    }
    return "?";
}

namespace {

constexpr int kInfinity = std::numeric_limits<int>::max() / 4;

int kind_rank(StepKind k) {
    switch (k) {
    case StepKind::Forward: return 0;
    case StepKind::Translate: return 1;
    case StepKind::Split: return 2;
    case StepKind::Merge: return 3;
    case StepKind::Reorder: return 4;
    case StepKind::Consume: return 5;
    case StepKind::Produce: return 6;
    }
    return 7;
}

// One enabled DP transition: the step(s) it emits, the span widths it
// consumes, its cost, and the deterministic tie-break key.
struct Move {
    std::vector<AlignStep> steps;
    std::size_t di = 0;
    std::size_t dj = 0;
    int cost = 0;

    int rank = 0;
    std::size_t lmin = std::numeric_limits<std::size_t>::max();
    std::size_t rmin = std::numeric_limits<std::size_t>::max();
    std::size_t lsize = 0;
    std::size_t rsize = 0;
    std::vector<std::size_t> perm;

    bool better_key_than(const Move& o) const {
        auto key = [](const Move& m) {
            return std::tie(m.rank, m.lmin, m.rmin, m.lsize, m.rsize, m.perm);
        };
        return key(*this) < key(o);
    }
};

std::vector<std::size_t> span(std::size_t from, std::size_t count) {
    std::vector<std::size_t> out(count);
    std::iota(out.begin(), out.end(), from);
    return out;
}

struct Aligner {
    const Trace& left;
    const Trace& right;
    const CorrespondenceMap& map;
    const AlignConfig& cfg;
    std::size_t nl, nr;

    Aligner(const Trace& l, const Trace& r, const CorrespondenceMap& m,
            const AlignConfig& c)
        : left(l), right(r), map(m), cfg(c), nl(l.size()), nr(r.size()) {}

    Move pair_move(std::size_t i, std::size_t j) const {
        Move mv;
        bool renamed = left[i].label != right[j].label;
        AlignStep step;
        step.kind = renamed ? StepKind::Translate : StepKind::Forward;
        step.left_span = {i};
        step.right_span = {j};
        step.side = left[i].direction == Direction::Send ? Side::Left : Side::Right;
        if (step.side == Side::Left) {
            step.source_label = left[i].label;
            step.target_label = right[j].label;
        } else {
            step.source_label = right[j].label;
            step.target_label = left[i].label;
        }
        step.labels = renamed
                          ? std::vector<ActionLabel>{step.source_label, step.target_label}
                          : std::vector<ActionLabel>{step.source_label};
        mv.cost = renamed ? cfg.translate_cost : 0;
        mv.steps.push_back(std::move(step));
        mv.di = mv.dj = 1;
        mv.rank = kind_rank(mv.steps[0].kind);
        mv.lmin = i;
        mv.rmin = j;
        mv.lsize = mv.rsize = 1;
        return mv;
    }

    Move one_sided_move(StepKind kind, Side side, std::size_t index) const {
        Move mv;
        AlignStep step;
        step.kind = kind;
        step.side = side;
        step.source_label =
            side == Side::Left ? left[index].label : right[index].label;
        step.labels = {step.source_label};
        if (side == Side::Left) {
            step.left_span = {index};
            mv.di = 1;
            mv.lmin = index;
            mv.lsize = 1;
        } else {
            step.right_span = {index};
            mv.dj = 1;
            mv.rmin = index;
            mv.rsize = 1;
        }
        mv.cost = kind == StepKind::Consume ? cfg.consume_cost : cfg.produce_cost;
        mv.rank = kind_rank(kind);
        mv.steps.push_back(std::move(step));
        return mv;
    }

    // The one-to-many fragment starting at (i, j) for a declared entry, if
    // the traces spell it out: the single label as a send on one side, the
    // multi-label list contiguously in declared order on the other.
    void entry_moves(std::size_t i, std::size_t j, std::vector<Move>& out) const {
        for (const auto& entry : map.entries) {
            if (entry.kind != CorrespondenceKind::Split &&
                entry.kind != CorrespondenceKind::Merge)
                continue;
            bool whole_on_left = entry.kind == CorrespondenceKind::Merge
                                     ? false
                                     : true; // Split arity: 1 left, many right
            const ActionLabel& whole =
                whole_on_left ? entry.left[0] : entry.right[0];
            const auto& parts = whole_on_left ? entry.right : entry.left;
            std::size_t k = parts.size();

            auto parts_match = [&](const Trace& t, std::size_t at, Direction dir) {
                if (at + k > t.size())
                    return false;
                for (std::size_t p = 0; p < k; ++p)
                    if (t[at + p].direction != dir || t[at + p].label != parts[p])
                        return false;
                return true;
            };

            const Trace& whole_trace = whole_on_left ? left : right;
            const Trace& parts_trace = whole_on_left ? right : left;
            Side whole_side = whole_on_left ? Side::Left : Side::Right;
            std::size_t wi = whole_on_left ? i : j;
            std::size_t pi = whole_on_left ? j : i;

            if (wi >= whole_trace.size() || whole_trace[wi].label != whole)
                continue;

            Move mv;
            AlignStep step;
            bool matched = false;
            if (whole_trace[wi].direction == Direction::Send &&
                parts_match(parts_trace, pi, Direction::Receive)) {
                // whole side sends once, the other receives the parts
                step.kind = StepKind::Split;
                step.side = whole_side;
                step.source_labels = {whole};
                step.target_labels = parts;
                mv.cost = cfg.split_cost;
                matched = true;
            } else if (whole_trace[wi].direction == Direction::Receive &&
                       parts_match(parts_trace, pi, Direction::Send)) {
                // parts side sends the sequence, the whole side receives once
                step.kind = StepKind::Merge;
                step.side = other(whole_side);
                step.source_labels = parts;
                step.target_labels = {whole};
                mv.cost = cfg.merge_cost;
                matched = true;
            }
            if (!matched)
                continue;

            step.labels = step.source_labels;
            step.labels.insert(step.labels.end(), step.target_labels.begin(),
                               step.target_labels.end());
            if (whole_on_left) {
                step.left_span = {i};
                step.right_span = span(j, k);
                mv.di = 1;
                mv.dj = k;
            } else {
                step.left_span = span(i, k);
                step.right_span = {j};
                mv.di = k;
                mv.dj = 1;
            }
            mv.rank = kind_rank(step.kind);
            mv.lmin = i;
            mv.rmin = j;
            mv.lsize = mv.di;
            mv.rsize = mv.dj;
            mv.steps.push_back(std::move(step));
            out.push_back(std::move(mv));
        }
    }

    // A window is executable by a buffering mediator only if each component
    // can deliver all its window sends before blocking on its first window
    // receive.
    static bool sends_precede_receives(const Trace& t, std::size_t at, std::size_t w) {
        bool seen_receive = false;
        for (std::size_t p = 0; p < w; ++p) {
            if (t[at + p].direction == Direction::Receive)
                seen_receive = true;
            else if (seen_receive)
                return false;
        }
        return true;
    }

    void reorder_moves(std::size_t i, std::size_t j, std::vector<Move>& out) const {
        std::size_t max_w = std::min<std::size_t>(
            {static_cast<std::size_t>(cfg.reorder_window), nl - i, nr - j});
        for (std::size_t w = 2; w <= max_w; ++w) {
            if (!sends_precede_receives(left, i, w) ||
                !sends_precede_receives(right, j, w))
                continue;
            std::vector<std::size_t> perm(w);
            std::iota(perm.begin(), perm.end(), 0);
            std::optional<std::vector<std::size_t>> best;
            int best_cost = kInfinity;
            do {
                bool identity_order = std::is_sorted(perm.begin(), perm.end());
                if (identity_order)
                    continue; // plain forwards, not a reordering
                bool ok = true;
                int displaced = 0;
                int renamed = 0;
                for (std::size_t p = 0; p < w && ok; ++p) {
                    const Action& la = left[i + p];
                    const Action& ra = right[j + perm[p]];
                    if (la.direction == ra.direction ||
                        !corresponds_one_to_one(map, la.label, ra.label))
                        ok = false;
                    else if (la.label != ra.label)
                        ++renamed;
                }
                if (!ok)
                    continue;
                for (std::size_t p = 0; p < w; ++p) {
                    bool d = false;
                    for (std::size_t q = 0; q < w && !d; ++q)
                        if ((p < q) != (perm[p] < perm[q]))
                            d = true;
                    if (d)
                        ++displaced;
                }
                int cost = cfg.reorder_cost * displaced + cfg.translate_cost * renamed;
                if (cost < best_cost) {
                    best_cost = cost;
                    best = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));

            if (!best)
                continue;
            Move mv;
            AlignStep step;
            step.kind = StepKind::Reorder;
            step.left_span = span(i, w);
            step.right_span = span(j, w);
            for (std::size_t p = 0; p < w; ++p) {
                const Action& la = left[i + p];
                const Action& ra = right[j + (*best)[p]];
                ReorderPair pair;
                if (la.direction == Direction::Send) {
                    pair.sender = Side::Left;
                    pair.sender_index = i + p;
                    pair.receiver_index = j + (*best)[p];
                    pair.source = la.label;
                    pair.target = ra.label;
                } else {
                    pair.sender = Side::Right;
                    pair.sender_index = j + (*best)[p];
                    pair.receiver_index = i + p;
                    pair.source = ra.label;
                    pair.target = la.label;
                }
                step.pairs.push_back(std::move(pair));
            }
            // Report labels in the order the mediator buffers them.
            auto buffered = step.pairs;
            std::sort(buffered.begin(), buffered.end(),
                      [](const ReorderPair& a, const ReorderPair& b) {
                          if (a.sender_index != b.sender_index)
                              return a.sender_index < b.sender_index;
                          return a.sender == Side::Left && b.sender == Side::Right;
                      });
            for (const auto& p : buffered)
                step.labels.push_back(p.source);
            step.side = step.pairs.front().sender;
            mv.cost = best_cost;
            mv.di = mv.dj = w;
            mv.rank = kind_rank(StepKind::Reorder);
            mv.lmin = i;
            mv.rmin = j;
            mv.lsize = mv.rsize = w;
            mv.perm = *best;
            mv.steps.push_back(std::move(step));
            out.push_back(std::move(mv));
        }
    }

    // Receive-send crisscross tail: left ?a.!b against right ?b'.!a' with
    // a~a' and b~b'. A buffering reorder would have to emit before it has
    // received, so the mediator instead produces each expected receive and
    // consumes each send, per side. Takes effect only when both produced
    // labels are declared producible.
    bool crisscross_at(std::size_t i, std::size_t j) const {
        return nl - i == 2 && nr - j == 2 &&
               left[i].direction == Direction::Receive &&
               left[i + 1].direction == Direction::Send &&
               right[j].direction == Direction::Receive &&
               right[j + 1].direction == Direction::Send &&
               corresponds_one_to_one(map, left[i].label, right[j + 1].label) &&
               corresponds_one_to_one(map, left[i + 1].label, right[j].label) &&
               is_producible(map, left[i].label) &&
               is_producible(map, right[j].label);
    }

    Move crisscross_move(std::size_t i, std::size_t j) const {
        Move mv;
        auto one = [&](StepKind kind, Side side, std::size_t index) {
            Move m = one_sided_move(kind, side, index);
            m.steps[0].ordering_composite = true;
            return m.steps[0];
        };
        mv.steps.push_back(one(StepKind::Produce, Side::Left, i));
        mv.steps.push_back(one(StepKind::Consume, Side::Left, i + 1));
        mv.steps.push_back(one(StepKind::Produce, Side::Right, j));
        mv.steps.push_back(one(StepKind::Consume, Side::Right, j + 1));
        mv.cost = 2 * cfg.produce_cost + 2 * cfg.consume_cost;
        mv.di = mv.dj = 2;
        mv.rank = 7;
        mv.lmin = i;
        mv.rmin = j;
        mv.lsize = mv.rsize = 2;
        return mv;
    }

    std::vector<Move> moves_at(std::size_t i, std::size_t j) const {
        if (crisscross_at(i, j))
            return {crisscross_move(i, j)}; // mandated decomposition

        std::vector<Move> out;
        if (i < nl && j < nr && left[i].direction != right[j].direction &&
            corresponds_one_to_one(map, left[i].label, right[j].label))
            out.push_back(pair_move(i, j));
        entry_moves(i, j, out);
        reorder_moves(i, j, out);
        if (i < nl) {
            if (left[i].direction == Direction::Send)
                out.push_back(one_sided_move(StepKind::Consume, Side::Left, i));
            else if (is_producible(map, left[i].label))
                out.push_back(one_sided_move(StepKind::Produce, Side::Left, i));
        }
        if (j < nr) {
            if (right[j].direction == Direction::Send)
                out.push_back(one_sided_move(StepKind::Consume, Side::Right, j));
            else if (is_producible(map, right[j].label))
                out.push_back(one_sided_move(StepKind::Produce, Side::Right, j));
        }
        return out;
    }

    AlignResult run() const {
        std::vector<std::vector<int>> dp(nl + 1, std::vector<int>(nr + 1, kInfinity));
        dp[nl][nr] = 0;
        // Moves strictly increase i + j, so a reverse sweep settles each state.
        for (std::size_t total = nl + nr; total-- > 0;) {
            for (std::size_t i = 0; i <= nl; ++i) {
                if (total < i || total - i > nr)
                    continue;
                std::size_t j = total - i;
                for (const Move& mv : moves_at(i, j)) {
                    int rest = dp[i + mv.di][j + mv.dj];
                    if (rest < kInfinity)
                        dp[i][j] = std::min(dp[i][j], mv.cost + rest);
                }
            }
        }

        AlignResult result;
        if (dp[0][0] >= kInfinity) {
            // Diagnostic frontier: the furthest (i, j) reachable at all.
            std::vector<std::vector<bool>> seen(nl + 1, std::vector<bool>(nr + 1, false));
            std::deque<std::pair<std::size_t, std::size_t>> queue;
            seen[0][0] = true;
            queue.emplace_back(0, 0);
            Frontier best{0, 0};
            while (!queue.empty()) {
                auto [i, j] = queue.front();
                queue.pop_front();
                if (i + j > best.left_consumed + best.right_consumed ||
                    (i + j == best.left_consumed + best.right_consumed &&
                     i > best.left_consumed))
                    best = {i, j};
                for (const Move& mv : moves_at(i, j)) {
                    std::size_t ni = i + mv.di, nj = j + mv.dj;
                    if (!seen[ni][nj]) {
                        seen[ni][nj] = true;
                        queue.emplace_back(ni, nj);
                    }
                }
            }
            result.frontier = best;
            return result;
        }

        Alignment alignment;
        alignment.cost = dp[0][0];
        std::size_t i = 0, j = 0;
        while (i < nl || j < nr) {
            std::optional<Move> chosen;
            for (Move& mv : moves_at(i, j)) {
                if (dp[i + mv.di][j + mv.dj] >= kInfinity)
                    continue;
                if (mv.cost + dp[i + mv.di][j + mv.dj] != dp[i][j])
                    continue;
                if (!chosen || mv.better_key_than(*chosen))
                    chosen = std::move(mv);
            }
            for (auto& s : chosen->steps)
                alignment.steps.push_back(std::move(s));
            i += chosen->di;
            j += chosen->dj;
        }
        result.alignment = std::move(alignment);
        result.frontier = {nl, nr};
        return result;
    }
};

} // namespace

AlignResult align(const Trace& left, const Trace& right,
                  const CorrespondenceMap& map, const AlignConfig& cfg) {
    if (cfg.reorder_window < 1)
        throw std::invalid_argument("reorder_window must be positive");
    for (int c : {cfg.translate_cost, cfg.split_cost, cfg.merge_cost,
                  cfg.reorder_cost, cfg.consume_cost, cfg.produce_cost})
        if (c < 1)
            throw std::invalid_argument("mismatch step costs must be >= 1");
    return Aligner(left, right, map, cfg).run();
}

namespace {

bool is_pair_step(const AlignStep& s) {
    return s.kind == StepKind::Forward || s.kind == StepKind::Translate;
}

std::string consume_variant(const std::vector<AlignStep>& steps, std::size_t k) {
    Side s = steps[k].side;
    if (k > 0 && is_pair_step(steps[k - 1]))
        return steps[k - 1].side == s ? "a" : "base";
    if (k + 1 < steps.size() && is_pair_step(steps[k + 1]))
        return steps[k + 1].side == s ? "b" : "c";
    return "base";
}

std::string produce_variant(const std::vector<AlignStep>& steps, std::size_t k) {
    Side s = steps[k].side;
    if (k > 0 && is_pair_step(steps[k - 1]))
        return steps[k - 1].side == s ? "base" : "a";
    if (k + 1 < steps.size() && is_pair_step(steps[k + 1]) && steps[k + 1].side == s)
        return s == Side::Right ? "b" : "c";
    return "base";
}

} // namespace

MismatchReport classify(const Alignment& alignment) {
    MismatchReport report;
    report.compatible = true;
    const auto& steps = alignment.steps;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const AlignStep& step = steps[k];
        if (step.kind == StepKind::Forward)
            continue;
        MismatchInstance inst;
        inst.step_index = k;
        inst.labels = step.labels;
        inst.left_span = step.left_span;
        inst.right_span = step.right_span;
        switch (step.kind) {
        case StepKind::Consume:
            inst.pattern = 1;
            inst.variant = step.ordering_composite ? "4c" : consume_variant(steps, k);
            break;
        case StepKind::Produce:
            inst.pattern = 2;
            inst.variant = step.ordering_composite ? "4c" : produce_variant(steps, k);
            break;
        case StepKind::Translate:
            inst.pattern = 3;
            inst.variant = step.side == Side::Left ? "base" : "a";
            break;
        case StepKind::Reorder: {
            inst.pattern = 4;
            bool mixed = std::any_of(step.pairs.begin(), step.pairs.end(),
                                     [&](const ReorderPair& p) {
                                         return p.sender != step.pairs.front().sender;
                                     });
            inst.variant = mixed ? "b" : "base";
            break;
        }
        case StepKind::Split:
            inst.pattern = 5;
            inst.variant = "base";
            break;
        case StepKind::Merge:
            inst.pattern = 6;
            inst.variant = "base";
            break;
        case StepKind::Forward:
            break;
        }
        report.instances.push_back(std::move(inst));
    }
    return report;
}

MismatchReport classify(const AlignResult& result) {
    if (!result.compatible())
        return MismatchReport{{}, false};
    return classify(*result.alignment);
}

namespace {

std::string join_labels(const std::vector<ActionLabel>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0)
            out.push_back(',');
        out += labels[i].name;
    }
    return out;
}

std::string join_span(const std::vector<std::size_t>& span) {
    if (span.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < span.size(); ++i) {
        if (i > 0)
            out.push_back(',');
        out += std::to_string(span[i]);
    }
    return out;
}

void render_instance(std::ostream& out, const MismatchInstance& inst,
                     const char* indent) {
    out << indent << "instance pattern=" << inst.pattern << " variant=" << inst.variant
        << " labels=" << join_labels(inst.labels) << " left=" << join_span(inst.left_span)
        << " right=" << join_span(inst.right_span) << "\n";
}

} // namespace

std::string render_report(const AlignResult& result) {
    std::ostringstream out;
    if (!result.compatible()) {
        out << "compatible=false\n";
        out << "frontier_left=" << result.frontier.left_consumed << "\n";
        out << "frontier_right=" << result.frontier.right_consumed << "\n";
        return out.str();
    }
    out << "compatible=true\n";
    out << "cost=" << result.alignment->cost << "\n";
    for (const auto& inst : classify(*result.alignment).instances)
        render_instance(out, inst, "");
    return out.str();
}

const AlignResult& MatchMatrix::at(std::size_t l, std::size_t r) const {
    return cells.at(l * right_count + r);
}

MatchMatrix match_components(const std::vector<Trace>& left_traces,
                             const std::vector<Trace>& right_traces,
                             const CorrespondenceMap& map, const AlignConfig& cfg) {
    MatchMatrix matrix;
    matrix.left_count = left_traces.size();
    matrix.right_count = right_traces.size();
    matrix.cells.reserve(left_traces.size() * right_traces.size());
    for (const auto& lt : left_traces)
        for (const auto& rt : right_traces) {
            AlignResult r = align(lt, rt, map, cfg);
            matrix.verdict = matrix.verdict || r.compatible();
            matrix.cells.push_back(std::move(r));
        }
    return matrix;
}

std::string render_match_report(const MatchMatrix& matrix) {
    std::ostringstream out;
    out << "verdict=" << (matrix.verdict ? "true" : "false") << "\n";
    out << "pairs=" << matrix.cells.size() << "\n";
    for (std::size_t l = 0; l < matrix.left_count; ++l)
        for (std::size_t r = 0; r < matrix.right_count; ++r) {
            const AlignResult& cell = matrix.at(l, r);
            out << "pair left=" << l << " right=" << r;
            if (cell.compatible()) {
                auto report = classify(*cell.alignment);
                out << " compatible=true cost=" << cell.alignment->cost
                    << " instances=" << report.instances.size() << "\n";
                for (const auto& inst : report.instances)
                    render_instance(out, inst, "  ");
            } else {
                out << " compatible=false frontier_left=" << cell.frontier.left_consumed
                    << " frontier_right=" << cell.frontier.right_consumed << "\n";
            }
        }
    return out.str();
}

} // namespace mediator
