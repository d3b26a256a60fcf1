#include "tensortrack/strands.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "tensortrack/errors.hpp"
#include "tensortrack/melons.hpp"

namespace tensortrack {

namespace {

int slot_id(const Slot& s) { return 2 * s.vertex + s.index; }

struct WiredDiagram {
    int vertices = 0;
    int rank = 0;
    std::vector<int> variants;
    std::vector<char> swap_at; // [vertex * rank + color] -> bubble crosses the pair
    std::vector<int> white_to_black; // prop maps by slot id, -1 when external
    std::vector<int> black_to_white;
};

WiredDiagram wire(const ModelSpec& model, const FeynmanDiagram& diagram) {
    WiredDiagram wd;
    wd.vertices = diagram.vertices;
    wd.rank = model.rank();
    wd.variants = diagram.variants;
    const auto bubbles = model_bubbles(model);
    wd.swap_at.assign(static_cast<std::size_t>(diagram.vertices * wd.rank), 0);
    for (int t = 0; t < diagram.vertices; ++t) {
        const ColoredGraph& b = bubbles[static_cast<std::size_t>(diagram.variants[static_cast<std::size_t>(t)])];
        for (int c = 0; c < wd.rank; ++c)
            wd.swap_at[static_cast<std::size_t>(t * wd.rank + c)] =
                (b.matchings[static_cast<std::size_t>(c)][0] == 1);
    }
    const int nslots = 2 * diagram.vertices;
    wd.white_to_black.assign(static_cast<std::size_t>(nslots), -1);
    wd.black_to_white.assign(static_cast<std::size_t>(nslots), -1);
    for (const PropLine& p : diagram.props) {
        wd.white_to_black[static_cast<std::size_t>(slot_id(p.white))] = slot_id(p.black);
        wd.black_to_white[static_cast<std::size_t>(slot_id(p.black))] = slot_id(p.white);
    }
    return wd;
}

// Bubble edge of color c leaving white slot ws.
int bubble_edge(const WiredDiagram& wd, int c, int ws) {
    const int t = ws / 2;
    const int i = ws % 2;
    return 2 * t + (i ^ wd.swap_at[static_cast<std::size_t>(t * wd.rank + c)]);
}

void check_slot(const ModelSpec&, const FeynmanDiagram& d, const Slot& s, const char* what) {
    if (s.vertex < 0 || s.vertex >= d.vertices)
        throw InvalidArgumentError(std::string(what) + " slot names vertex " + std::to_string(s.vertex) +
                                   ", diagram has " + std::to_string(d.vertices));
    if (s.index < 0 || s.index > 1)
        throw InvalidArgumentError(std::string(what) + " slot index must be 0 or 1, got " +
                                   std::to_string(s.index));
}

} // namespace

FeynmanDiagram make_diagram(const ModelSpec& model, int vertices, std::vector<int> variants,
                            std::vector<PropLine> props) {
    if (vertices < 1) throw InvalidArgumentError("diagram needs at least one vertex");
    if (static_cast<int>(variants.size()) != vertices)
        throw InvalidArgumentError("expected " + std::to_string(vertices) + " vertex variants, got " +
                                   std::to_string(variants.size()));
    const int nvariants = static_cast<int>(model_bubbles(model).size());
    for (int v : variants)
        if (v < 0 || v >= nvariants)
            throw InvalidArgumentError("vertex variant " + std::to_string(v) + " out of range [0, " +
                                       std::to_string(nvariants - 1) + "]");
    FeynmanDiagram d;
    d.vertices = vertices;
    d.variants = std::move(variants);
    std::vector<char> wseen(static_cast<std::size_t>(2 * vertices), 0);
    std::vector<char> bseen(static_cast<std::size_t>(2 * vertices), 0);
    for (const PropLine& p : props) {
        check_slot(model, d, p.white, "propagator white");
        check_slot(model, d, p.black, "propagator black");
        auto& w = wseen[static_cast<std::size_t>(slot_id(p.white))];
        auto& b = bseen[static_cast<std::size_t>(slot_id(p.black))];
        if (w)
            throw InvalidArgumentError("white slot (" + std::to_string(p.white.vertex) + ", " +
                                       std::to_string(p.white.index) + ") used by two propagators");
        if (b)
            throw InvalidArgumentError("black slot (" + std::to_string(p.black.vertex) + ", " +
                                       std::to_string(p.black.index) + ") used by two propagators");
        w = b = 1;
    }
    d.props = std::move(props);
    return d;
}

bool is_diagram_connected(const FeynmanDiagram& diagram) {
    std::vector<int> parent(static_cast<std::size_t>(diagram.vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const PropLine& p : diagram.props) {
        const int a = find(p.white.vertex);
        const int b = find(p.black.vertex);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    const int root = find(0);
    for (int t = 1; t < diagram.vertices; ++t)
        if (find(t) != root) return false;
    return true;
}

StrandNetwork build_strands(const ModelSpec& model, const FeynmanDiagram& diagram) {
    const WiredDiagram wd = wire(model, diagram);
    const int nslots = 2 * diagram.vertices;

    StrandNetwork net;
    net.vertices = diagram.vertices;
    net.prop_count = static_cast<int>(diagram.props.size());
    for (int ws = 0; ws < nslots; ++ws)
        if (wd.white_to_black[static_cast<std::size_t>(ws)] == -1) ++net.external_whites;

    std::vector<char> visited(static_cast<std::size_t>(nslots));
    for (int c = 0; c < wd.rank; ++c) {
        std::fill(visited.begin(), visited.end(), 0);
        // External strands first: they begin at a white slot no propagator feeds.
        for (int ws = 0; ws < nslots; ++ws) {
            if (wd.white_to_black[static_cast<std::size_t>(ws)] != -1) continue;
            OpenStrand s;
            s.block = c;
            s.start = {ws / 2, ws % 2};
            int cur = ws;
            for (;;) {
                visited[static_cast<std::size_t>(cur)] = 1;
                const int bs = bubble_edge(wd, c, cur);
                const int next = wd.black_to_white[static_cast<std::size_t>(bs)];
                if (next == -1) {
                    s.end = {bs / 2, bs % 2};
                    break;
                }
                ++s.props;
                cur = next;
            }
            net.open.push_back(s);
        }
        // Whatever white slots remain lie on index loops.
        for (int ws = 0; ws < nslots; ++ws) {
            if (visited[static_cast<std::size_t>(ws)]) continue;
            ClosedStrand s;
            s.block = c;
            int cur = ws;
            do {
                visited[static_cast<std::size_t>(cur)] = 1;
                const int bs = bubble_edge(wd, c, cur);
                cur = wd.black_to_white[static_cast<std::size_t>(bs)];
                ++s.props;
            } while (cur != ws);
            net.closed.push_back(s);
        }
    }

    // Dual route for vacuum diagrams: the closed strands of block c must be
    // the faces of the color pair {0, c+1} in the diagram's closure, a face of
    // length 2l matching a strand through l propagators.
    if (net.external_whites == 0) {
        const ColoredGraph closed_graph = closure(model, diagram, {});
        for (int c = 0; c < wd.rank; ++c) {
            std::vector<int> strand_lengths;
            for (const ClosedStrand& s : net.closed)
                if (s.block == c) strand_lengths.push_back(2 * s.props);
            std::sort(strand_lengths.begin(), strand_lengths.end());
            if (strand_lengths != face_lengths(closed_graph, 0, c + 1))
                throw InternalConsistencyError(
                    "closed strands of block " + std::to_string(c) +
                    " disagree with the closure's face census");
        }
    }
    return net;
}

DivergenceReport divergence_degree(const StrandNetwork& net, const ModelSpec& model) {
    DivergenceReport r;
    for (const ClosedStrand& s : net.closed)
        r.delta += model.block_dims[static_cast<std::size_t>(s.block)];
    r.delta -= 2 * net.prop_count;
    r.loops = net.prop_count - net.vertices + 1;
    r.npoints = 2 * net.external_whites;
    std::set<int> covered;
    for (const OpenStrand& s : net.open)
        if (s.props > 0) {
            r.routed = true;
            covered.insert(s.block);
        }
    r.covered_blocks.assign(covered.begin(), covered.end());
    return r;
}

ColoredGraph closure(const ModelSpec& model, const FeynmanDiagram& diagram, const Perm& pairing) {
    const WiredDiagram wd = wire(model, diagram);
    const int nslots = 2 * diagram.vertices;

    std::vector<int> ext_whites, ext_blacks;
    for (int s = 0; s < nslots; ++s) {
        if (wd.white_to_black[static_cast<std::size_t>(s)] == -1) ext_whites.push_back(s);
        if (wd.black_to_white[static_cast<std::size_t>(s)] == -1) ext_blacks.push_back(s);
    }
    if (pairing.size() != ext_whites.size())
        throw InvalidArgumentError("closure pairing must cover " + std::to_string(ext_whites.size()) +
                                   " external whites, got " + std::to_string(pairing.size()));
    if (!ext_whites.empty() && !is_permutation(pairing))
        throw InvalidArgumentError("closure pairing must be a permutation");

    std::vector<Perm> ms(static_cast<std::size_t>(wd.rank + 1), Perm(static_cast<std::size_t>(nslots)));
    for (int ws = 0; ws < nslots; ++ws) {
        const int bs = wd.white_to_black[static_cast<std::size_t>(ws)];
        if (bs != -1) ms[0][static_cast<std::size_t>(ws)] = bs;
    }
    for (std::size_t i = 0; i < ext_whites.size(); ++i)
        ms[0][static_cast<std::size_t>(ext_whites[i])] =
            ext_blacks[static_cast<std::size_t>(pairing[i])];
    for (int c = 0; c < wd.rank; ++c)
        for (int ws = 0; ws < nslots; ++ws)
            ms[static_cast<std::size_t>(c + 1)][static_cast<std::size_t>(ws)] = bubble_edge(wd, c, ws);
    return make_graph(wd.rank + 1, std::move(ms));
}

FeynmanDiagram one_loop_four_point(const ModelSpec& model, int variant) {
    return make_diagram(model, 2, {variant, variant},
                        {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}});
}

FeynmanDiagram one_loop_two_point(const ModelSpec& model, int variant) {
    return make_diagram(model, 1, {variant}, {{{0, 0}, {0, 0}}});
}

namespace {

// Serialization of a diagram under a vertex reordering and per-vertex pair
// flips; the minimum over all of them is the class key. Each quartic bubble's
// automorphisms are exactly the simultaneous swap of its two white and two
// black slots, so this sweep hits every isomorph.
std::string serialize_diagram(const FeynmanDiagram& d, const std::vector<int>& w2b,
                              const std::vector<int>& b2w, const Perm& order, int flips) {
    const int v = d.vertices;
    std::vector<int> inv(static_cast<std::size_t>(v));
    for (int u = 0; u < v; ++u) inv[static_cast<std::size_t>(order[static_cast<std::size_t>(u)])] = u;
    auto flip = [&](int t) { return (flips >> t) & 1; };
    auto map_slot = [&](int s) {
        const int t = s / 2;
        return 2 * inv[static_cast<std::size_t>(t)] + ((s % 2) ^ flip(t));
    };
    std::string out;
    out.reserve(static_cast<std::size_t>(2 + 5 * v));
    out.push_back(static_cast<char>(v));
    out.push_back(static_cast<char>(d.props.size()));
    for (int u = 0; u < v; ++u)
        out.push_back(static_cast<char>(d.variants[static_cast<std::size_t>(order[static_cast<std::size_t>(u)])]));
    for (int u = 0; u < v; ++u) {
        const int o = order[static_cast<std::size_t>(u)];
        for (int i = 0; i < 2; ++i) {
            const int ws = 2 * o + (i ^ flip(o));
            const int bs = w2b[static_cast<std::size_t>(ws)];
            out.push_back(bs == -1 ? '\x7e' : static_cast<char>(map_slot(bs)));
        }
        for (int i = 0; i < 2; ++i) {
            const int bs = 2 * o + (i ^ flip(o));
            const int ws = b2w[static_cast<std::size_t>(bs)];
            out.push_back(ws == -1 ? '\x7f' : static_cast<char>(map_slot(ws)));
        }
    }
    return out;
}

std::string diagram_class_key(const FeynmanDiagram& d) {
    const int v = d.vertices;
    std::vector<int> w2b(static_cast<std::size_t>(2 * v), -1), b2w(static_cast<std::size_t>(2 * v), -1);
    for (const PropLine& p : d.props) {
        w2b[static_cast<std::size_t>(slot_id(p.white))] = slot_id(p.black);
        b2w[static_cast<std::size_t>(slot_id(p.black))] = slot_id(p.white);
    }
    std::string best;
    for (const Perm& order : cached_permutations(v))
        for (int flips = 0; flips < (1 << v); ++flips) {
            std::string s = serialize_diagram(d, w2b, b2w, order, flips);
            if (best.empty() || s < best) best = std::move(s);
        }
    return best;
}

// Closed-strand count per color for a wiring, parameterized by the set of
// vertices whose bubble crosses that color's pair.
int closed_count_for_mask(int v, const int* b2w, const char* white_paired, int swap_mask) {
    const int nslots = 2 * v;
    unsigned visited = 0;
    // Open sweep.
    for (int ws = 0; ws < nslots; ++ws) {
        if (white_paired[ws]) continue;
        int cur = ws;
        for (;;) {
            visited |= 1u << cur;
            const int t = cur / 2;
            const int bs = 2 * t + ((cur % 2) ^ ((swap_mask >> t) & 1));
            const int next = b2w[bs];
            if (next == -1) break;
            cur = next;
        }
    }
    int closed = 0;
    for (int ws = 0; ws < nslots; ++ws) {
        if (visited & (1u << ws)) continue;
        ++closed;
        int cur = ws;
        do {
            visited |= 1u << cur;
            const int t = cur / 2;
            const int bs = 2 * t + ((cur % 2) ^ ((swap_mask >> t) & 1));
            cur = b2w[bs];
        } while (cur != ws);
    }
    return closed;
}

bool wiring_connected(int v, const int* b2w) {
    if (v == 1) return true;
    int parent[4];
    for (int i = 0; i < v; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int bs = 0; bs < 2 * v; ++bs) {
        const int ws = b2w[bs];
        if (ws == -1) continue;
        const int a = find(bs / 2);
        const int b = find(ws / 2);
        if (a != b) parent[a] = b;
    }
    const int root = find(0);
    for (int t = 1; t < v; ++t)
        if (find(t) != root) return false;
    return true;
}

std::string classify_closures(const ModelSpec& model, const FeynmanDiagram& diag) {
    if (model.kind == ModelKind::Vector) return "-";
    int ext = 2 * diag.vertices - static_cast<int>(diag.props.size());
    bool found = false;
    const Jacket planar_jacket = model.kind == ModelKind::Matrix ? Jacket{0, 1, 2} : Jacket{};
    for (const Perm& pairing : cached_permutations(ext)) {
        const ColoredGraph closed_graph = closure(model, diag, pairing);
        if (model.kind == ModelKind::Tensor ? is_melonic(closed_graph)
                                            : jacket_genus(closed_graph, planar_jacket) == 0) {
            found = true;
            break;
        }
    }
    if (model.kind == ModelKind::Tensor) return found ? "melonic" : "non-melonic";
    return found ? "planar" : "non-planar";
}

} // namespace

std::vector<ScanEntry> scan_divergent(const ModelSpec& model, int max_vertices) {
    if (max_vertices < 1) throw InvalidArgumentError("scan needs max_vertices >= 1");
    if (max_vertices > 4)
        throw ResourceLimitError("diagram scan limited to 4 vertices, got " +
                                 std::to_string(max_vertices));

    const auto bubbles = model_bubbles(model);
    const int nvariants = static_cast<int>(bubbles.size());
    const int rank = model.rank();
    const int total_dim = model.total_dim();
    // Which color each variant crosses (-1 when none, as for the vector).
    std::vector<int> crossed_color(static_cast<std::size_t>(nvariants), -1);
    for (int b = 0; b < nvariants; ++b)
        for (int c = 0; c < rank; ++c)
            if (bubbles[static_cast<std::size_t>(b)].matchings[static_cast<std::size_t>(c)][0] == 1)
                crossed_color[static_cast<std::size_t>(b)] = c;

    std::vector<ScanEntry> result;

    for (int v = 1; v <= max_vertices; ++v) {
        const int nslots = 2 * v;
        for (int j = v; j <= 2 * v - 1; ++j) {
            std::map<std::string, ScanEntry> block;

            std::vector<int> whites, blacks;
            // Enumerate white subsets, black subsets, and bijections.
            for (int wmask = 0; wmask < (1 << nslots); ++wmask) {
                if (std::popcount(static_cast<unsigned>(wmask)) != j) continue;
                whites.clear();
                for (int s = 0; s < nslots; ++s)
                    if (wmask & (1 << s)) whites.push_back(s);
                char white_paired[8] = {};
                for (int s : whites) white_paired[s] = 1;

                for (int bmask = 0; bmask < (1 << nslots); ++bmask) {
                    if (std::popcount(static_cast<unsigned>(bmask)) != j) continue;
                    blacks.clear();
                    for (int s = 0; s < nslots; ++s)
                        if (bmask & (1 << s)) blacks.push_back(s);

                    std::sort(blacks.begin(), blacks.end());
                    do {
                        int b2w[8];
                        std::fill(b2w, b2w + nslots, -1);
                        for (int i = 0; i < j; ++i) b2w[blacks[static_cast<std::size_t>(i)]] = whites[static_cast<std::size_t>(i)];
                        if (!wiring_connected(v, b2w)) continue;

                        // Closed-strand counts for every swap mask this model
                        // can realize; the color assignment only selects among
                        // them.
                        int f[16];
                        int fmax = 0;
                        if (model.kind == ModelKind::Tensor) {
                            for (int mask = 0; mask < (1 << v); ++mask) {
                                f[mask] = closed_count_for_mask(v, b2w, white_paired, mask);
                                fmax = std::max(fmax, f[mask]);
                            }
                        } else {
                            f[0] = closed_count_for_mask(v, b2w, white_paired, 0);
                            const int full = (1 << v) - 1;
                            f[full] = closed_count_for_mask(v, b2w, white_paired, full);
                            fmax = std::max(f[0], f[full]);
                        }
                        if (total_dim * fmax - 2 * j < 0) continue;

                        // Sweep variant assignments with an odometer.
                        std::vector<int> digits(static_cast<std::size_t>(v), 0);
                        int masks[8] = {}; // per color: vertices crossing it
                        for (int t = 0; t < v; ++t) {
                            const int cc = crossed_color[0];
                            if (cc >= 0) masks[cc] |= 1 << t;
                        }
                        for (;;) {
                            int delta = -2 * j;
                            for (int c = 0; c < rank; ++c)
                                delta += model.block_dims[static_cast<std::size_t>(c)] * f[masks[c]];

                            if (delta >= 0) {
                                std::vector<PropLine> props;
                                props.reserve(static_cast<std::size_t>(j));
                                for (int i = 0; i < j; ++i)
                                    props.push_back({{whites[static_cast<std::size_t>(i)] / 2, whites[static_cast<std::size_t>(i)] % 2},
                                                     {blacks[static_cast<std::size_t>(i)] / 2, blacks[static_cast<std::size_t>(i)] % 2}});
                                FeynmanDiagram diag = make_diagram(model, v, digits, std::move(props));
                                std::string key = diagram_class_key(diag);
                                if (!block.contains(key)) {
                                    const StrandNetwork net = build_strands(model, diag);
                                    const DivergenceReport rep = divergence_degree(net, model);
                                    if (rep.delta != delta)
                                        throw InternalConsistencyError(
                                            "scan fast path computed delta " + std::to_string(delta) +
                                            " but the strand walk gives " + std::to_string(rep.delta));
                                    ScanEntry e;
                                    e.key = key;
                                    e.hash = fnv1a64(key);
                                    e.vertices = v;
                                    e.props = j;
                                    e.loops = rep.loops;
                                    e.npoints = rep.npoints;
                                    e.delta = rep.delta;
                                    e.closed_count = static_cast<int>(net.closed.size());
                                    e.classification = classify_closures(model, diag);
                                    block.emplace(std::move(key), std::move(e));
                                }
                            }

                            // Advance the odometer, updating crossing masks.
                            int t = 0;
                            for (; t < v; ++t) {
                                const int old = digits[static_cast<std::size_t>(t)];
                                const int occ = crossed_color[static_cast<std::size_t>(old)];
                                if (occ >= 0) masks[occ] &= ~(1 << t);
                                if (old + 1 < nvariants) {
                                    digits[static_cast<std::size_t>(t)] = old + 1;
                                    const int ncc = crossed_color[static_cast<std::size_t>(old + 1)];
                                    if (ncc >= 0) masks[ncc] |= 1 << t;
                                    break;
                                }
                                digits[static_cast<std::size_t>(t)] = 0;
                                const int ncc = crossed_color[0];
                                if (ncc >= 0) masks[ncc] |= 1 << t;
                            }
                            if (t == v) break;
                        }
                    } while (std::next_permutation(blacks.begin(), blacks.end()));
                }
            }

            for (auto& [key, entry] : block) result.push_back(std::move(entry));
        }
    }
    return result;
}

} // namespace tensortrack
