#include "ergm/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ergm/error.hpp"

namespace ergm {

using nlohmann::json;

namespace {

// Character iterator that tracks the line of the last non-blank character
// handed to the parser.
class LineIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineIterator() = default;
    LineIterator(const char* p, int* line, int* last) : p_(p), line_(line), last_(last) {}

    reference operator*() const { return *p_; }
    LineIterator& operator++() {
        if (*p_ == '\n') {
            ++*line_;
        } else if (*p_ != ' ' && *p_ != '\t' && *p_ != '\r') {
            *last_ = *line_;
        }
        ++p_;
        return *this;
    }
    LineIterator operator++(int) {
        LineIterator t = *this;
        ++*this;
        return t;
    }
    friend bool operator==(const LineIterator& a, const LineIterator& b) { return a.p_ == b.p_; }
    friend bool operator!=(const LineIterator& a, const LineIterator& b) { return a.p_ != b.p_; }

private:
    const char* p_ = nullptr;
    int* line_ = nullptr;
    int* last_ = nullptr;
};

// Records the source line of every value by JSON pointer.
class LineMap : public nlohmann::json_sax<json> {
public:
    explicit LineMap(const int* last) : last_(last) {}
    std::map<std::string, int> lines;

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override { return open(false); }
    bool start_array(std::size_t) override { return open(true); }
    bool key(string_t& k) override {
        stack_.back().key = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
        return false;
    }

private:
    struct Frame {
        bool array;
        std::size_t index = 0;
        std::string key;
    };

    std::string path() const {
        std::string s;
        for (const Frame& f : stack_) s += "/" + (f.array ? std::to_string(f.index) : f.key);
        return s;
    }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
    }
    bool value() {
        lines.emplace(path(), *last_);
        advance();
        return true;
    }
    bool open(bool array) {
        lines.emplace(path(), *last_);
        stack_.push_back(Frame{array, 0, {}});
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }

    const int* last_;
    std::vector<Frame> stack_;
};

class Located {
public:
    Located(std::string source, std::map<std::string, int> lines)
        : source_(std::move(source)), lines_(std::move(lines)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
        int line = 1;
        // Fall back to the nearest enclosing value that has a line.
        std::string p = pointer;
        while (true) {
            auto it = lines_.find(p);
            if (it != lines_.end()) {
                line = it->second;
                break;
            }
            const auto cut = p.find_last_of('/');
            if (cut == std::string::npos) break;
            p = p.substr(0, cut);
        }
        throw SpecError(source_ + ":" + std::to_string(line) + ": " + msg);
    }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

long as_int(const json& j, const std::string& ptr, const Located& loc, const std::string& what) {
    if (!j.is_number_integer()) loc.fail(ptr, what + " must be an integer");
    return j.get<long>();
}

} // namespace

ErgmSpec parse_spec_text(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        const std::size_t end = std::min<std::size_t>(ex.byte ? ex.byte - 1 : 0, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
        throw SpecError(source + ":" + std::to_string(line) + ": " + ex.what());
    }
    int line = 1, last = 1;
    LineMap map(&last);
    const char* b = text.data();
    json::sax_parse(LineIterator(b, &line, &last), LineIterator(b + text.size(), &line, &last),
                    &map);
    const Located loc(source, std::move(map.lines));

    if (!doc.is_object()) loc.fail("", "spec must be a JSON object");
    for (const auto& [k, v] : doc.items()) {
        if (k != "n" && k != "beta" && k != "motifs") loc.fail("/" + k, "unknown key \"" + k + "\"");
    }
    ErgmSpec spec;
    if (!doc.contains("n")) loc.fail("", "missing \"n\"");
    const long n = as_int(doc["n"], "/n", loc, "\"n\"");
    if (n < 2) loc.fail("/n", "\"n\" must be at least 2");
    spec.n = static_cast<std::size_t>(n);

    if (!doc.contains("beta") || !doc["beta"].is_array()) loc.fail("/beta", "\"beta\" must be an array");
    const json& beta = doc["beta"];
    for (std::size_t j = 0; j < beta.size(); ++j) {
        const std::string ptr = "/beta/" + std::to_string(j);
        if (!beta[j].is_number()) loc.fail(ptr, "beta entries must be numbers");
        const double b = beta[j].get<double>();
        if (j >= 1 && !(b > 0.0)) {
            std::ostringstream os;
            os << "ferromagnetic assumption violated: beta[" << j << "] = " << b
               << " but every beta_j with j >= 1 must be positive";
            loc.fail(ptr, os.str());
        }
        spec.beta.push_back(b);
    }

    if (!doc.contains("motifs") || !doc["motifs"].is_array()) {
        loc.fail("/motifs", "\"motifs\" must be an array");
    }
    const json& motifs = doc["motifs"];
    for (std::size_t j = 0; j < motifs.size(); ++j) {
        const std::string ptr = "/motifs/" + std::to_string(j);
        const json& m = motifs[j];
        if (!m.is_object()) loc.fail(ptr, "motif must be an object");
        for (const auto& [k, v] : m.items()) {
            if (k != "vertices" && k != "edges") loc.fail(ptr + "/" + k, "unknown motif key \"" + k + "\"");
        }
        if (!m.contains("vertices")) loc.fail(ptr, "motif missing \"vertices\"");
        if (!m.contains("edges") || !m["edges"].is_array()) loc.fail(ptr, "motif \"edges\" must be an array");
        const long v = as_int(m["vertices"], ptr + "/vertices", loc, "\"vertices\"");
        std::vector<MotifGraph::Edge> edges;
        for (std::size_t k = 0; k < m["edges"].size(); ++k) {
            const std::string eptr = ptr + "/edges/" + std::to_string(k);
            const json& e = m["edges"][k];
            if (!e.is_array() || e.size() != 2) loc.fail(eptr, "motif edge must be a pair [u, v]");
            edges.emplace_back(static_cast<int>(as_int(e[0], eptr + "/0", loc, "vertex")),
                               static_cast<int>(as_int(e[1], eptr + "/1", loc, "vertex")));
        }
        try {
            spec.motifs.emplace_back(static_cast<int>(v), std::move(edges));
        } catch (const SpecError& ex) {
            loc.fail(ptr, "motif " + std::to_string(j) + ": " + ex.what());
        }
    }
    if (spec.motifs.empty()) loc.fail("/motifs", "at least the edge motif is required");
    if (spec.motifs[0].kind() != MotifKind::edge) {
        loc.fail("/motifs/0", "motif 0 must be the single edge {\"vertices\": 2, \"edges\": [[0, 1]]}");
    }
    if (spec.beta.size() != spec.motifs.size()) {
        loc.fail("/beta", "\"beta\" has " + std::to_string(spec.beta.size()) + " entries but there are " +
                              std::to_string(spec.motifs.size()) + " motifs");
    }
    try {
        validate_spec(spec);
    } catch (const SpecError& ex) {
        loc.fail("", ex.what());
    }
    return spec;
}

ErgmSpec parse_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path.string() + ": cannot open spec file");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_spec_text(text, path.string());
}

std::string serialize_spec(const ErgmSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    os << "{\n  \"n\": " << spec.n << ",\n  \"beta\": [";
    for (std::size_t j = 0; j < spec.beta.size(); ++j) os << (j ? ", " : "") << spec.beta[j];
    os << "],\n  \"motifs\": [\n";
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        const MotifGraph& g = spec.motifs[j];
        os << "    {\"vertices\": " << g.v() << ", \"edges\": [";
        for (int k = 0; k < g.e(); ++k) {
            os << (k ? ", " : "") << "[" << g.edge(k).first << ", " << g.edge(k).second << "]";
        }
        os << "]}" << (j + 1 < spec.motifs.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"phase", "cstar", "sample", "marginal", "fluct",
                                            "hajek", "degvar", "wasserstein", "scaling"};
    return s;
}

const std::vector<std::string>& scaling_methods() {
    static const std::vector<std::string> s{"marginal", "fluct", "hajek", "degvar",
                                            "wasserstein-plugin", "wasserstein-coupled"};
    return s;
}

bool RunConfig::simulates() const { return subcommand != "phase" && subcommand != "cstar"; }

void RunConfig::validate() const {
    const auto& subs = subcommands();
    if (std::find(subs.begin(), subs.end(), subcommand) == subs.end()) {
        throw SpecError("unknown subcommand \"" + subcommand + "\"");
    }
    if (!std::filesystem::exists(spec_path)) {
        throw SpecError("spec file " + spec_path.string() + " does not exist");
    }
    if (subcommand == "scaling") {
        const auto& m = scaling_methods();
        if (std::find(m.begin(), m.end(), method) == m.end()) {
            throw SpecError("unknown scaling method \"" + method + "\"");
        }
        if (grid.size() < 3) throw SpecError("scaling needs a grid of at least 3 values of n");
    }
    if (simulates()) {
        if (n && *n < 8) throw SpecError("simulation subcommands need n >= 8 (got " + std::to_string(*n) + ")");
        for (std::size_t g : grid) {
            if (g < 8) throw SpecError("simulation subcommands need n >= 8 (grid has " + std::to_string(g) + ")");
        }
        if (sweeps == 0 || thin == 0 || replicas == 0) {
            throw SpecError("sweeps, thinning and replicas must be positive");
        }
    }
    if (!(eta > 0.0 && eta < 0.5)) throw SpecError("eta must lie in (0, 0.5)");
}

} // namespace ergm
