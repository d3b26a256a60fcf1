#include "tensortrack/gct.hpp"

#include <fstream>
#include <sstream>

#include "tensortrack/errors.hpp"

namespace tensortrack {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == '\r') continue;
        return ch == '#';
    }
    return true;
}

int parse_int_field(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        throw MalformedGraphError("expected integer for " + what + ", got '" + token + "'");
    }
    if (used != token.size())
        throw MalformedGraphError("expected integer for " + what + ", got '" + token + "'");
    return value;
}

} // namespace

ColoredGraph parse_gct(std::istream& in) {
    int rank = -1;
    int pairs = -1;
    std::vector<EdgeTriple> edges;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank_or_comment(line)) continue;

        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        const std::string where = " (line " + std::to_string(lineno) + ")";

        if (kw == "rank") {
            std::string tok;
            if (!(ls >> tok)) throw MalformedGraphError("rank line missing value" + where);
            if (rank != -1) throw MalformedGraphError("duplicate rank line" + where);
            rank = parse_int_field(tok, "rank");
        } else if (kw == "pairs") {
            std::string tok;
            if (!(ls >> tok)) throw MalformedGraphError("pairs line missing value" + where);
            if (pairs != -1) throw MalformedGraphError("duplicate pairs line" + where);
            pairs = parse_int_field(tok, "pairs");
        } else if (kw == "edge") {
            std::string tc, tw, tb;
            if (!(ls >> tc >> tw >> tb))
                throw MalformedGraphError("edge line needs 3 fields: color white black" + where);
            edges.push_back({parse_int_field(tc, "edge color"), parse_int_field(tw, "edge white"),
                             parse_int_field(tb, "edge black")});
        } else {
            throw MalformedGraphError("unknown directive '" + kw + "'" + where);
        }
        std::string extra;
        if (ls >> extra) throw MalformedGraphError("trailing token '" + extra + "'" + where);
    }

    if (rank == -1) throw MalformedGraphError("missing rank line");
    if (pairs == -1) throw MalformedGraphError("missing pairs line");
    const std::size_t expected = static_cast<std::size_t>(rank) * static_cast<std::size_t>(pairs);
    if (rank >= 1 && pairs >= 1 && edges.size() > expected)
        throw MalformedGraphError("expected " + std::to_string(expected) + " edges, got " +
                                  std::to_string(edges.size()));
    return validate(rank, pairs, edges);
}

ColoredGraph parse_gct(const std::string& text) {
    std::istringstream in(text);
    return parse_gct(in);
}

ColoredGraph load_gct(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    return parse_gct(in);
}

std::string serialize_gct(const ColoredGraph& g) {
    std::ostringstream out;
    out << "rank " << g.rank << "\n";
    out << "pairs " << g.pairs << "\n";
    for (int c = 0; c < g.rank; ++c)
        for (int w = 0; w < g.pairs; ++w)
            out << "edge " << c << " " << (w + 1) << " "
                << (g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] + 1) << "\n";
    return out.str();
}

void save_gct(const ColoredGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << serialize_gct(g);
    if (!out) throw Error("write failed: " + path);
}

} // namespace tensortrack
