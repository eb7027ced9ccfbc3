#include "ncvem/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncvem {

namespace {

// Whitespace-separated tokens with '#' comments stripped, independent of the
// global locale (std::from_chars parses C-locale decimals).
class TokenStream {
  public:
    explicit TokenStream(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.push_back(tok);
        }
    }

    const std::string& next(const char* what) {
        if (pos_ >= tokens_.size())
            throw std::runtime_error(std::string("poly2: unexpected end of file, expected ") +
                                     what);
        return tokens_[pos_++];
    }

    double next_double(const char* what) {
        const std::string& t = next(what);
        double v;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size())
            throw std::runtime_error("poly2: bad number '" + t + "' for " + what);
        return v;
    }

    long next_int(const char* what) {
        const std::string& t = next(what);
        long v;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size())
            throw std::runtime_error("poly2: bad integer '" + t + "' for " + what);
        return v;
    }

    bool done() const { return pos_ >= tokens_.size(); }

  private:
    std::vector<std::string> tokens_;
    size_t pos_ = 0;
};

} // namespace

PolygonalMesh read_poly2(std::istream& in) {
    TokenStream ts(in);
    if (ts.next("magic 'poly2'") != "poly2") throw std::runtime_error("poly2: bad magic");
    long nv = ts.next_int("vertex count");
    long nc = ts.next_int("cell count");
    if (nv < 0 || nc < 0) throw std::runtime_error("poly2: negative count");

    std::vector<Point2> vertices(nv);
    for (long i = 0; i < nv; ++i) {
        vertices[i].x = ts.next_double("vertex x");
        vertices[i].y = ts.next_double("vertex y");
    }
    std::vector<std::vector<int>> loops(nc);
    for (long c = 0; c < nc; ++c) {
        long n = ts.next_int("cell vertex count");
        if (n < 3) throw std::runtime_error("poly2: cell with fewer than 3 vertices");
        loops[c].resize(n);
        for (long i = 0; i < n; ++i) loops[c][i] = static_cast<int>(ts.next_int("vertex index"));
    }
    if (!ts.done()) throw std::runtime_error("poly2: trailing tokens after last cell");
    return build_topology(std::move(vertices), loops);
}

PolygonalMesh read_poly2_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    return read_poly2(in);
}

void write_poly2(std::ostream& out, const PolygonalMesh& mesh) {
    out << "poly2 " << mesh.vertices.size() << " " << mesh.cells.size() << "\n";
    char buf[64];
    for (const auto& v : mesh.vertices) {
        snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& c : mesh.cells) {
        out << c.vertex_loop.size();
        for (int v : c.vertex_loop) out << " " << v;
        out << "\n";
    }
}

void write_poly2_file(const std::string& path, const PolygonalMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);
    write_poly2(out, mesh);
}

} // namespace ncvem
