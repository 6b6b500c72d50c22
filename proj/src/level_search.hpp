#pragma once

// Dijkstra over one hierarchy step: the shortcut graph of a level plus the
// original edges that are too long for it. Shared by construction, updates and
// validators.

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "hdr/hierarchy.hpp"

namespace hdr::detail {

struct Arc {
    VertexId to;
    PerturbedWeight weight;
    PerturbedWeight maxedge;
    EdgeRef via;
};

/// prior ∪ {original edges with base in (low, high]}.
class LevelView {
public:
    LevelView(const Graph& g, const ShortcutGraph* prior, int prior_level, Base low, Base high)
        : g_(&g), prior_(prior), prior_level_(prior_level), low_(low), high_(high) {}

    /// H_i: G[i-1] plus the original edges of E[i].
    static LevelView step(const Graph& g, const std::vector<Level>& levels, int i) {
        if (i == 0) return {g, nullptr, -1, 0, 1};
        const auto& prior = levels.at(static_cast<std::size_t>(i - 1));
        return {g, &prior.graph, i - 1, pow8(i - 1), pow8(i)};
    }

    template <class F>
    void for_each_arc(VertexId v, F&& f) const {
        if (prior_ != nullptr) {
            for (std::uint32_t idx : prior_->incident(v)) {
                const ShortcutEdge& e = prior_->edge(idx);
                f(Arc{e.other(v), e.weight, e.maxedge_below, EdgeRef{prior_level_, idx}});
            }
        }
        for (const Incidence& inc : g_->neighbors(v)) {
            const Edge& e = g_->edge(inc.edge);
            if (e.weight.base > low_ && e.weight.base <= high_) {
                f(Arc{inc.to, e.weight, e.weight, EdgeRef{EdgeRef::kOriginal, inc.edge}});
            }
        }
    }

    const Graph& graph() const { return *g_; }

private:
    const Graph* g_;
    const ShortcutGraph* prior_;
    int prior_level_;
    Base low_;
    Base high_;
};

/// Reusable single-source search with stamped dense labels.
class LevelSearch {
public:
    explicit LevelSearch(std::size_t capacity) { resize(capacity); }

    void resize(std::size_t capacity) {
        if (labels_.size() < capacity) labels_.resize(capacity);
    }

    /// Settles every vertex within base distance `radius` of `source`. When
    /// `cover` is given, tracks whether a tree path passes through a cover
    /// vertex strictly between its ends.
    void run(const LevelView& view, VertexId source, Base radius, std::span<const char> cover = {}) {
        ++stamp_;
        settled_.clear();
        source_ = source;
        resize(std::size_t{source} + 1);
        Label& s = labels_[source];
        s = Label{};
        s.stamp = stamp_;
        s.dist = PerturbedWeight::zero();
        heap_.push({s.dist, source});
        const auto in_cover = [&](VertexId v) { return v < cover.size() && cover[v]; };
        while (!heap_.empty()) {
            auto [d, x] = heap_.top();
            heap_.pop();
            Label& lx = labels_[x];
            if (lx.done || d != lx.dist) continue;
            lx.done = true;
            settled_.push_back(x);
            const bool blocks = x != source && in_cover(x);
            view.for_each_arc(x, [&](const Arc& arc) {
                const PerturbedWeight nd = d + arc.weight;
                if (nd.base > radius) return;
                if (arc.to >= labels_.size()) resize(std::size_t{arc.to} + 1);
                Label& ly = labels_[arc.to];
                if (ly.stamp != stamp_) {
                    ly = Label{};
                    ly.stamp = stamp_;
                }
                if (ly.done || !(nd < ly.dist)) return;
                ly.dist = nd;
                ly.maxedge = std::max(lx.maxedge, arc.maxedge);
                ly.parent = x;
                ly.via = arc.via;
                ly.interior_hit = lx.interior_hit || blocks;
                heap_.push({nd, arc.to});
            });
        }
    }

    VertexId source() const { return source_; }
    const std::vector<VertexId>& settled() const { return settled_; }
    bool reached(VertexId v) const { return v < labels_.size() && labels_[v].stamp == stamp_ && labels_[v].done; }
    PerturbedWeight dist(VertexId v) const { return labels_[v].dist; }
    PerturbedWeight maxedge(VertexId v) const { return labels_[v].maxedge; }
    bool interior_hit(VertexId v) const { return labels_[v].interior_hit; }
    VertexId parent(VertexId v) const { return labels_[v].parent; }

    /// Tree path source -> target as vertices.
    std::vector<VertexId> path_vertices(VertexId target) const {
        std::vector<VertexId> out;
        for (VertexId x = target; x != kNoVertex; x = labels_[x].parent) out.push_back(x);
        std::reverse(out.begin(), out.end());
        return out;
    }

    /// Tree path source -> target as the edges traversed.
    std::vector<EdgeRef> path_refs(VertexId target) const {
        std::vector<EdgeRef> out;
        for (VertexId x = target; labels_[x].parent != kNoVertex; x = labels_[x].parent) out.push_back(labels_[x].via);
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    struct Label {
        PerturbedWeight dist = PerturbedWeight::infinity();
        PerturbedWeight maxedge;
        VertexId parent = kNoVertex;
        EdgeRef via;
        std::uint32_t stamp = 0;
        bool done = false;
        bool interior_hit = false;
    };
    using Entry = std::pair<PerturbedWeight, VertexId>;

    std::vector<Label> labels_;
    std::vector<VertexId> settled_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
    std::uint32_t stamp_ = 0;
    VertexId source_ = kNoVertex;
};

/// Runs the pair enumeration of the close-to-the-middle rule for level i from
/// each source in ascending order. Pairs (s, t) with s < t are admitted when
/// `accept_partner(t)` holds; uncovered ones add their midpoint to `c_prime`.
void extend_c_prime(const LevelView& view, int i, std::span<const VertexId> sources,
                    const std::function<bool(VertexId)>& accept_partner,
                    std::map<VertexId, Provenance>& c_prime, LevelSearch& search, LevelBuildStats* stats);

/// Every qualifying level-i pair with at least one end in `sources`, as
/// sorted unique (min, max) pairs.
void collect_pairs(const LevelView& view, int i, std::span<const VertexId> sources, LevelSearch& search,
                   std::vector<std::pair<VertexId, VertexId>>& out, LevelBuildStats* stats);

/// Applies the close-to-the-middle rule to sorted pairs in order.
void close_pairs(const LevelView& view, int i, std::span<const std::pair<VertexId, VertexId>> pairs,
                 std::map<VertexId, Provenance>& c_prime, LevelSearch& search, LevelBuildStats* stats);

/// Shortcut edges of G(C, radius) found from `source`, oriented source -> other.
struct FoundShortcut {
    VertexId other;
    PerturbedWeight weight;
    PerturbedWeight maxedge;
    std::vector<EdgeRef> children;  // source -> other
};
void shortcuts_from(const LevelView& view, VertexId source, Base radius, std::span<const char> in_cover,
                    LevelSearch& search, std::vector<FoundShortcut>& out);

/// Inserts a found shortcut with canonical orientation (a < b).
std::uint32_t insert_shortcut(ShortcutGraph& graph, VertexId source, FoundShortcut found);

}  // namespace hdr::detail
