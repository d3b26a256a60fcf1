#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tensortrack/model.hpp"

namespace tensortrack {

// A field slot on a diagram vertex: each quartic vertex carries two white
// (field) and two black (conjugate field) slots, indexed 0 and 1.
struct Slot {
    int vertex = 0;
    int index = 0;

    bool operator==(const Slot& o) const = default;
};

// A propagator joins a white slot to a black slot.
struct PropLine {
    Slot white;
    Slot black;
};

// A Feynman diagram of a quartic model: `variants[v]` picks the interaction
// bubble of vertex v out of model_bubbles() (always 0 for vector/matrix, the
// distinguished color for tensor vertices). Slots not touched by any
// propagator are external legs.
struct FeynmanDiagram {
    int vertices = 0;
    std::vector<int> variants;
    std::vector<PropLine> props;
};

FeynmanDiagram make_diagram(const ModelSpec& model, int vertices, std::vector<int> variants,
                            std::vector<PropLine> props);

bool is_diagram_connected(const FeynmanDiagram& diagram);

// One index line followed through the diagram. A strand of block b alternates
// bubble edges of color b and propagators; closed strands are the index loops
// whose sums produce cutoff powers.
struct ClosedStrand {
    int block = 0;
    int props = 0; // propagators traversed
};

struct OpenStrand {
    int block = 0;
    int props = 0;
    Slot start; // external white slot
    Slot end;   // external black slot
};

struct StrandNetwork {
    int vertices = 0;
    int prop_count = 0;
    int external_whites = 0;
    std::vector<ClosedStrand> closed;
    std::vector<OpenStrand> open;
};

// Walk every strand of the diagram. For vacuum diagrams the closed strands
// are cross-checked against the face census of the diagram's closure; a
// mismatch is an internal error.
StrandNetwork build_strands(const ModelSpec& model, const FeynmanDiagram& diagram);

struct DivergenceReport {
    int delta = 0;       // sum of closed-strand block weights minus 2 * propagators
    int loops = 0;       // props - vertices + 1 for a connected diagram
    int npoints = 0;     // external legs
    bool routed = false; // some external strand traverses a propagator
    std::vector<int> covered_blocks; // blocks of routed open strands, sorted unique
};

DivergenceReport divergence_degree(const StrandNetwork& net, const ModelSpec& model);

// Close all external legs with an explicit pairing (external white i joins
// external black pairing[i], both in slot order) and return the rank+1
// colored graph whose color 0 holds the propagator/pairing matching and whose
// colors 1..rank hold the bubble structure.
ColoredGraph closure(const ModelSpec& model, const FeynmanDiagram& diagram, const Perm& pairing);

// One-loop reference diagrams used across tests and the power-counting table.
FeynmanDiagram one_loop_four_point(const ModelSpec& model, int variant = 0);
FeynmanDiagram one_loop_two_point(const ModelSpec& model, int variant = 0);

// A divergent isomorphism class found by the scan.
struct ScanEntry {
    std::string key;         // canonical class key (opaque bytes)
    std::uint64_t hash = 0;  // FNV-1a of key
    int vertices = 0;
    int props = 0;
    int loops = 0;
    int npoints = 0;
    int delta = 0;
    int closed_count = 0;
    std::string classification; // melonic / non-melonic, planar / non-planar, "-"
};

// All connected non-vacuum diagrams with at least one loop and delta >= 0, up
// to isomorphism, for 1..max_vertices vertices. Classification asks whether
// some pairing of the external legs closes the diagram into a melonic
// (tensor) or genus-zero (matrix) graph.
std::vector<ScanEntry> scan_divergent(const ModelSpec& model, int max_vertices);

} // namespace tensortrack
