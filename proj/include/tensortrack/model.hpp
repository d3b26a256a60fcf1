#pragma once

#include <string>
#include <vector>

#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

// The three quartic field theories handled here, distinguished by how many
// index blocks a field carries and how heavy each block is:
//   vector: one block worth 4 momentum components,
//   matrix: two blocks worth 4 each,
//   tensor: five blocks worth 1 each.
enum class ModelKind { Vector, Matrix, Tensor };

struct ModelSpec {
    ModelKind kind = ModelKind::Vector;
    std::vector<int> block_dims; // power-counting weight per index block
    double mass2 = 1.0;
    int cutoff = 16;    // index sums run over a box of linear size ~ cutoff
    double coupling = 0.1;

    int rank() const { return static_cast<int>(block_dims.size()); }
    int total_dim() const;
};

ModelSpec make_model(ModelKind kind, double mass2 = 1.0, int cutoff = 16, double coupling = 0.1);

ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

// Quartic interaction bubbles as colored graphs on two pairs. The bubble's
// rank matches the model's block count; its matchings say how each block is
// rewired between the two field pairs of the vertex.
ColoredGraph vector_bubble();          // both blocks parallel: (phi~ phi)^2
ColoredGraph matrix_bubble();          // block 0 crossed: the single-trace quartic
ColoredGraph tensor_bubble(int color); // block `color` crossed, the rest parallel

// All interaction bubbles of the model: one for vector/matrix, one per color
// for the tensor. Index into this list is the "variant" tag a diagram vertex
// carries.
std::vector<ColoredGraph> model_bubbles(const ModelSpec& model);

} // namespace tensortrack
