#include "holonet/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "holonet/errors.hpp"

namespace holonet {

namespace {

struct Line {
    std::vector<std::string> tokens;
    std::size_t offset = 0; // byte offset of the line start
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        Line line;
        line.offset = pos;
        std::size_t t = pos;
        while (t < end) {
            while (t < end && (text[t] == ' ' || text[t] == '\t')) ++t;
            std::size_t s = t;
            while (t < end && text[t] != ' ' && text[t] != '\t') ++t;
            if (t > s) line.tokens.push_back(text.substr(s, t - s));
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        pos = end + 1;
    }
    return lines;
}

double parse_double_tok(const std::string& tok, const Line& line, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw parse_error(std::string("bad ") + what + " '" + tok + "'", line.offset);
    return v;
}

int64_t parse_int_tok(const std::string& tok, const Line& line, const char* what) {
    int64_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw parse_error(std::string("bad ") + what + " '" + tok + "'", line.offset);
    return v;
}

// `key=value` field with a fixed key.
std::string field(const std::string& tok, const char* key, const Line& line) {
    const std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0)
        throw parse_error("expected '" + prefix + "...', got '" + tok + "'", line.offset);
    return tok.substr(prefix.size());
}

class LineReader {
public:
    explicit LineReader(std::vector<Line> lines) : lines_(std::move(lines)) {}

    bool done() const { return at_ >= lines_.size(); }
    const Line& peek() const {
        if (done()) throw parse_error("unexpected end of file");
        return lines_[at_];
    }
    const Line& next() {
        const Line& l = peek();
        ++at_;
        return l;
    }

private:
    std::vector<Line> lines_;
    std::size_t at_ = 0;
};

GroupSpec parse_group_block(LineReader& reader) {
    const Line& head = reader.next();
    if (head.tokens[0] != "group")
        throw parse_error("expected 'group' line, got '" + head.tokens[0] + "'", head.offset);

    if (head.tokens.size() == 3 && head.tokens[1] == "u1") {
        const double eps = parse_double_tok(field(head.tokens[2], "eps", head), head, "eps");
        GroupSpec spec = GroupSpec::u1(eps);
        spec.validate();
        return spec;
    }
    if (head.tokens.size() != 4)
        throw parse_error("group line needs 'u1 eps=..' or 'dim=.. d=.. eps=..'", head.offset);

    GroupSpec spec;
    spec.dim = static_cast<int>(parse_int_tok(field(head.tokens[1], "dim", head), head, "dim"));
    const int d = static_cast<int>(parse_int_tok(field(head.tokens[2], "d", head), head, "d"));
    spec.eps_prime = parse_double_tok(field(head.tokens[3], "eps", head), head, "eps");
    if (spec.dim < 1 || d < 1) throw parse_error("group dim and d must be >= 1", head.offset);

    for (int i = 0; i < d; ++i) {
        const Line& gl = reader.next();
        if (gl.tokens[0] != "gen")
            throw parse_error("expected 'gen' line, got '" + gl.tokens[0] + "'", gl.offset);
        const std::size_t want = 2 + 2 * static_cast<std::size_t>(spec.dim) * spec.dim;
        if (gl.tokens.size() != want)
            throw parse_error("gen line needs " + std::to_string(want - 2) + " reals", gl.offset);
        if (parse_int_tok(gl.tokens[1], gl, "generator index") != i)
            throw parse_error("gen lines must appear in index order", gl.offset);
        CMat g(spec.dim);
        for (int k = 0; k < spec.dim * spec.dim; ++k) {
            const double re = parse_double_tok(gl.tokens[2 + 2 * k], gl, "gen entry");
            const double im = parse_double_tok(gl.tokens[3 + 2 * k], gl, "gen entry");
            g.data()[static_cast<std::size_t>(k)] = cd(re, im);
        }
        spec.generators.push_back(std::move(g));
    }
    spec.validate();
    return spec;
}

void serialize_group(std::ostringstream& out, const GroupSpec& spec) {
    if (spec.dim == 1 && spec.d() == 1 &&
        spec.generators[0].at(0, 0) == cd(0.0, spec.eps_prime)) {
        out << "group u1 eps=" << format_double(spec.eps_prime) << "\n";
        return;
    }
    out << "group dim=" << spec.dim << " d=" << spec.d()
        << " eps=" << format_double(spec.eps_prime) << "\n";
    for (int i = 0; i < spec.d(); ++i) {
        out << "gen " << i;
        for (const cd& z : spec.generators[static_cast<std::size_t>(i)].data())
            out << " " << format_double(z.real()) << " " << format_double(z.imag());
        out << "\n";
    }
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string serialize_network(const NetworkDocument& doc) {
    const Network& net = doc.emb.net;
    if (!net.frozen())
        throw constraint_error("serialize: network must be frozen (canonical edge order)");
    doc.group.validate();

    std::ostringstream out;
    out << "holonet v1\n";
    out << "mode " << (net.mode() == Mode::dual ? "dual" : "combined") << "\n";
    out << "unit " << format_double(net.unit_length()) << "\n";
    serialize_group(out, doc.group);
    out << "vertices " << net.vertex_count() << "\n";
    if (!doc.emb.coords.empty()) {
        if (doc.emb.coords.size() != static_cast<std::size_t>(net.vertex_count()))
            throw constraint_error("serialize: coordinate count mismatch");
        for (int v = 0; v < net.vertex_count(); ++v)
            out << "coord " << v << " " << format_double(doc.emb.coords[v].x) << " "
                << format_double(doc.emb.coords[v].y) << "\n";
    }
    for (const Edge& e : net.edges()) {
        out << "edge " << e.u << " " << e.v << " ";
        switch (e.kind.tag) {
            case EdgeTag::dist: out << "dist " << (e.kind.sign > 0 ? "+" : "-"); break;
            case EdgeTag::phase: out << "phase " << e.kind.gen; break;
            case EdgeTag::comb: out << "comb " << e.kind.gen; break;
        }
        out << "\n";
    }
    return out.str();
}

NetworkDocument parse_network(const std::string& text) {
    LineReader reader(tokenize(text));

    {
        const Line& head = reader.next();
        if (head.tokens.size() != 2 || head.tokens[0] != "holonet" || head.tokens[1] != "v1")
            throw parse_error("expected 'holonet v1' header", head.offset);
    }

    Mode mode;
    {
        const Line& l = reader.next();
        if (l.tokens.size() != 2 || l.tokens[0] != "mode")
            throw parse_error("expected 'mode dual|combined'", l.offset);
        if (l.tokens[1] == "dual") mode = Mode::dual;
        else if (l.tokens[1] == "combined") mode = Mode::combined;
        else throw parse_error("unknown mode '" + l.tokens[1] + "'", l.offset);
    }

    double unit = 0.0;
    {
        const Line& l = reader.next();
        if (l.tokens.size() != 2 || l.tokens[0] != "unit")
            throw parse_error("expected 'unit <length>'", l.offset);
        unit = parse_double_tok(l.tokens[1], l, "unit length");
        if (!(unit > 0.0)) throw parse_error("unit length must be positive", l.offset);
    }

    const GroupSpec group = parse_group_block(reader);

    int vertices = 0;
    {
        const Line& l = reader.next();
        if (l.tokens.size() != 2 || l.tokens[0] != "vertices")
            throw parse_error("expected 'vertices <count>'", l.offset);
        vertices = static_cast<int>(parse_int_tok(l.tokens[1], l, "vertex count"));
        if (vertices < 0) throw parse_error("vertex count must be >= 0", l.offset);
    }

    NetworkDocument doc{EmbeddedNetwork{Network(mode, unit), {}}, group};
    doc.emb.net.add_vertices(vertices);

    while (!reader.done() && reader.peek().tokens[0] == "coord") {
        const Line& l = reader.next();
        if (l.tokens.size() != 4) throw parse_error("coord line needs 'coord <v> <x> <y>'", l.offset);
        const int v = static_cast<int>(parse_int_tok(l.tokens[1], l, "vertex id"));
        if (v != static_cast<int>(doc.emb.coords.size()))
            throw parse_error("coord lines must cover vertices 0..V-1 in order", l.offset);
        if (v >= vertices) throw parse_error("coord vertex out of range", l.offset);
        doc.emb.coords.push_back({parse_double_tok(l.tokens[2], l, "x"),
                                  parse_double_tok(l.tokens[3], l, "y")});
    }
    if (!doc.emb.coords.empty() && doc.emb.coords.size() != static_cast<std::size_t>(vertices))
        throw parse_error("coord block must cover all vertices or none");

    while (!reader.done()) {
        const Line& l = reader.next();
        if (l.tokens[0] != "edge")
            throw parse_error("unknown line '" + l.tokens[0] + "'", l.offset);
        if (l.tokens.size() != 5) throw parse_error("edge line needs 4 fields", l.offset);
        const int u = static_cast<int>(parse_int_tok(l.tokens[1], l, "vertex id"));
        const int v = static_cast<int>(parse_int_tok(l.tokens[2], l, "vertex id"));
        EdgeKind kind;
        if (l.tokens[3] == "dist") {
            if (l.tokens[4] == "+") kind = EdgeKind::dist(1);
            else if (l.tokens[4] == "-") kind = EdgeKind::dist(-1);
            else throw parse_error("dist sign must be '+' or '-'", l.offset);
        } else if (l.tokens[3] == "phase" || l.tokens[3] == "comb") {
            const int gen = static_cast<int>(parse_int_tok(l.tokens[4], l, "generator index"));
            if (gen < 0 || gen >= group.d())
                throw parse_error("generator index outside the group block", l.offset);
            kind = l.tokens[3] == "phase" ? EdgeKind::phase(gen) : EdgeKind::comb(gen);
        } else {
            throw parse_error("unknown edge kind '" + l.tokens[3] + "'", l.offset);
        }
        try {
            doc.emb.net.add_edge(u, v, kind);
        } catch (const constraint_error& e) {
            throw parse_error(std::string(e.what()), l.offset);
        }
    }

    doc.emb.net.freeze();
    return doc;
}

WeightedComplex parse_complex(const std::string& text) {
    LineReader reader(tokenize(text));
    WeightedComplex complex;
    {
        const Line& head = reader.next();
        if (head.tokens.size() != 2 || head.tokens[0] != "complex")
            throw parse_error("expected 'complex v=<count>' header", head.offset);
        complex.vertex_count =
            static_cast<int>(parse_int_tok(field(head.tokens[1], "v", head), head, "vertex count"));
    }
    while (!reader.done()) {
        const Line& l = reader.next();
        if (l.tokens[0] != "wedge")
            throw parse_error("unknown line '" + l.tokens[0] + "'", l.offset);
        if (l.tokens.size() != 4) throw parse_error("wedge line needs 'wedge <u> <v> <l>'", l.offset);
        complex.edges.push_back({static_cast<int>(parse_int_tok(l.tokens[1], l, "vertex id")),
                                 static_cast<int>(parse_int_tok(l.tokens[2], l, "vertex id")),
                                 parse_double_tok(l.tokens[3], l, "length")});
    }
    try {
        complex.validate();
    } catch (const constraint_error& e) {
        throw parse_error(std::string(e.what()));
    }
    return complex;
}

std::string serialize_complex(const WeightedComplex& complex) {
    complex.validate();
    std::ostringstream out;
    out << "complex v=" << complex.vertex_count << "\n";
    for (const auto& e : complex.edges)
        out << "wedge " << e.u << " " << e.v << " " << format_double(e.length) << "\n";
    return out.str();
}

GroupSpec parse_group_text(const std::string& text) {
    LineReader reader(tokenize(text));
    GroupSpec spec = parse_group_block(reader);
    if (!reader.done())
        throw parse_error("unknown line '" + reader.peek().tokens[0] + "'", reader.peek().offset);
    return spec;
}

std::string serialize_group_text(const GroupSpec& spec) {
    spec.validate();
    std::ostringstream out;
    serialize_group(out, spec);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw constraint_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw constraint_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

} // namespace holonet
