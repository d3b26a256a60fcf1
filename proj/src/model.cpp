#include "tensortrack/model.hpp"

#include <numeric>

#include "tensortrack/errors.hpp"

namespace tensortrack {

int ModelSpec::total_dim() const {
    return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

ModelSpec make_model(ModelKind kind, double mass2, int cutoff, double coupling) {
    if (mass2 <= 0.0) throw InvalidArgumentError("mass2 must be positive");
    if (cutoff < 1) throw InvalidArgumentError("cutoff must be >= 1");
    ModelSpec m;
    m.kind = kind;
    m.mass2 = mass2;
    m.cutoff = cutoff;
    m.coupling = coupling;
    switch (kind) {
        case ModelKind::Vector: m.block_dims = {4}; break;
        case ModelKind::Matrix: m.block_dims = {4, 4}; break;
        case ModelKind::Tensor: m.block_dims = {1, 1, 1, 1, 1}; break;
    }
    return m;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "vector") return ModelKind::Vector;
    if (name == "matrix") return ModelKind::Matrix;
    if (name == "tensor") return ModelKind::Tensor;
    throw InvalidArgumentError("unknown model '" + name + "' (expected vector, matrix, or tensor)");
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Vector: return "vector";
        case ModelKind::Matrix: return "matrix";
        case ModelKind::Tensor: return "tensor";
    }
    return "?";
}

namespace {

ColoredGraph bubble_with_crossed(int rank, int crossed_color) {
    std::vector<Perm> ms(static_cast<std::size_t>(rank), identity_perm(2));
    if (crossed_color >= 0) ms[static_cast<std::size_t>(crossed_color)] = {1, 0};
    return make_graph(rank, std::move(ms));
}

} // namespace

ColoredGraph vector_bubble() { return bubble_with_crossed(1, -1); }

ColoredGraph matrix_bubble() { return bubble_with_crossed(2, 0); }

ColoredGraph tensor_bubble(int color) {
    if (color < 0 || color >= 5)
        throw InvalidArgumentError("tensor bubble color must be in [0, 4], got " + std::to_string(color));
    return bubble_with_crossed(5, color);
}

std::vector<ColoredGraph> model_bubbles(const ModelSpec& model) {
    switch (model.kind) {
        case ModelKind::Vector: return {vector_bubble()};
        case ModelKind::Matrix: return {matrix_bubble()};
        case ModelKind::Tensor: {
            std::vector<ColoredGraph> out;
            for (int c = 0; c < 5; ++c) out.push_back(tensor_bubble(c));
            return out;
        }
    }
    return {};
}

} // namespace tensortrack
