#include "eak/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace eak::io {

InputError::InputError(std::string source, int line, std::string field, std::string message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
                         (field.empty() ? "" : field + ": ") + message),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)),
      message_(std::move(message)) {}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, 0, "", "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

// Input iterator that reports how many characters the parser has consumed.
struct CountingIterator {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    std::shared_ptr<std::size_t> consumed;

    reference operator*() const { return *p; }
    CountingIterator& operator++() {
        ++p;
        ++*consumed;
        return *this;
    }
    CountingIterator operator++(int) {
        auto old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator& o) const { return p == o.p; }
};

// Records the line on which every value starts, keyed by JSON pointer.
class LineIndex : public nlohmann::json_sax<json> {
public:
    LineIndex(const std::string& text, std::shared_ptr<std::size_t> consumed)
        : consumed_(std::move(consumed)) {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (text[i] == '\n') newlines_.push_back(i);
    }

    int line_of(const std::string& pointer) const {
        auto it = lines_.find(pointer);
        return it == lines_.end() ? 0 : it->second;
    }
    int line_at(std::size_t offset) const {
        return int(std::lower_bound(newlines_.begin(), newlines_.end(), offset) - newlines_.begin()) + 1;
    }

    bool null() override { return scalar(); }
    bool boolean(bool) override { return scalar(); }
    bool number_integer(number_integer_t) override { return scalar(); }
    bool number_unsigned(number_unsigned_t) override { return scalar(); }
    bool number_float(number_float_t, const string_t&) override { return scalar(); }
    bool string(string_t&) override { return scalar(); }
    bool binary(binary_t&) override { return scalar(); }
    bool start_object(std::size_t) override { return open(false); }
    bool key(string_t& k) override {
        stack_.back().key = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(true); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
        return false;
    }

private:
    struct Level {
        bool array;
        std::size_t index = 0;
        std::string key;
    };

    std::string pointer() const {
        std::string s;
        for (auto& l : stack_) s += "/" + (l.array ? std::to_string(l.index) : l.key);
        return s;
    }
    // The lexer has read one character past the token that triggered the event.
    void record() { lines_.emplace(pointer(), line_at(*consumed_ ? *consumed_ - 1 : 0)); }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
    }
    bool scalar() {
        record();
        advance();
        return true;
    }
    bool open(bool array) {
        record();
        stack_.push_back({array, 0, {}});
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }

    std::shared_ptr<std::size_t> consumed_;
    std::vector<std::size_t> newlines_;
    std::vector<Level> stack_;
    std::map<std::string, int> lines_;
};

// A parsed document together with the lines of its values.
class Document {
public:
    Document(const std::string& text, std::string source)
        : source_(std::move(source)), consumed_(std::make_shared<std::size_t>(0)), index_(text, consumed_) {
        try {
            root_ = json::parse(text);
        } catch (const json::parse_error& e) {
            int line = index_.line_at(e.byte ? e.byte - 1 : 0);
            std::string msg = e.what();
            // drop nlohmann's "[json.exception.parse_error.101] parse error at line L, column C: "
            if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
            throw InputError(source_, line, "", "invalid JSON: " + msg);
        }
        CountingIterator first{text.data(), consumed_}, last{text.data() + text.size(), consumed_};
        json::sax_parse(first, last, &index_);
    }

    const json& root() const { return root_; }

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        // a missing field points at its parent
        std::string p = pointer;
        int line = index_.line_of(p);
        while (line == 0 && !p.empty()) {
            p = p.substr(0, p.rfind('/'));
            line = index_.line_of(p);
        }
        throw InputError(source_, line, pointer.empty() ? "/" : pointer, message);
    }

    const json& field(const json& obj, const std::string& pointer, const std::string& key) const {
        if (!obj.contains(key)) fail(pointer + "/" + key, "missing field");
        return obj.at(key);
    }

    Rational rational(const json& v, const std::string& pointer) const {
        if (v.is_number_integer()) return Rational(long(v.get<std::int64_t>()));
        if (v.is_string()) {
            try {
                return Rational::parse(v.get<std::string>());
            } catch (const std::invalid_argument&) {
                fail(pointer, "not a rational number: \"" + v.get<std::string>() + "\"");
            }
        }
        fail(pointer, "expected a rational string \"p/q\" or \"p\"");
    }

    Integer integer(const json& v, const std::string& pointer) const {
        if (v.is_number_integer()) return Integer(long(v.get<std::int64_t>()));
        if (v.is_string()) {
            Rational r = rational(v, pointer);
            if (r.is_integer()) return r.num();
        }
        fail(pointer, "expected an integer");
    }

    const json& array(const json& v, const std::string& pointer) const {
        if (!v.is_array()) fail(pointer, "expected an array");
        return v;
    }

    RatVector rat_vector(const json& v, const std::string& pointer, std::size_t dim) const {
        array(v, pointer);
        if (v.size() != dim)
            fail(pointer, "expected " + std::to_string(dim) + " entries, found " + std::to_string(v.size()));
        RatVector out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], pointer + "/" + std::to_string(i)));
        return out;
    }

    std::size_t positive_size(const json& v, const std::string& pointer, std::size_t max) const {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || std::size_t(v.get<std::int64_t>()) > max)
            fail(pointer, "expected an integer between 1 and " + std::to_string(max));
        return std::size_t(v.get<std::int64_t>());
    }

private:
    std::string source_;
    std::shared_ptr<std::size_t> consumed_;
    LineIndex index_;
    json root_;
};

}  // namespace

Polytope parse_polytope(const std::string& text, const std::string& source) {
    Document doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) doc.fail("", "expected an object");
    std::size_t d = doc.positive_size(doc.field(root, "", "dim"), "/dim", kMaxDimension);
    bool has_v = root.contains("vertices"), has_h = root.contains("inequalities");
    if (has_v == has_h) doc.fail("", "exactly one of \"vertices\" and \"inequalities\" must be present");
    for (auto& [key, _] : root.items())
        if (key != "dim" && key != "vertices" && key != "inequalities") doc.fail("/" + key, "unknown field");

    try {
        if (has_v) {
            const json& vs = doc.array(root["vertices"], "/vertices");
            std::vector<RatVector> pts;
            for (std::size_t i = 0; i < vs.size(); ++i)
                pts.push_back(doc.rat_vector(vs[i], "/vertices/" + std::to_string(i), d));
            if (pts.size() < d + 1 || affine_rank(pts) < d)
                doc.fail("/vertices", "points do not span a " + std::to_string(d) + "-dimensional polytope");
            return Polytope::from_vertices(d, pts);
        }
        const json& rows = doc.array(root["inequalities"], "/inequalities");
        HRep h{d, {}};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::string at = "/inequalities/" + std::to_string(i);
            if (!rows[i].is_object()) doc.fail(at, "expected an object with \"a\" and \"b\"");
            const json& a = doc.array(doc.field(rows[i], at, "a"), at + "/a");
            if (a.size() != d)
                doc.fail(at + "/a", "expected " + std::to_string(d) + " entries, found " + std::to_string(a.size()));
            Inequality row;
            for (std::size_t j = 0; j < d; ++j) row.a.push_back(doc.integer(a[j], at + "/a/" + std::to_string(j)));
            if (std::all_of(row.a.begin(), row.a.end(), [](const Integer& z) { return z == 0; }))
                doc.fail(at + "/a", "normal vector is zero");
            row.b = doc.rational(doc.field(rows[i], at, "b"), at + "/b");
            h.rows.push_back(std::move(row));
        }
        return Polytope::from_hrep(h);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        doc.fail(has_v ? "/vertices" : "/inequalities", e.what());
    }
}

Polytope load_polytope(const std::string& path) { return parse_polytope(read_file(path), path); }

LatticeSumProblem parse_lattice_problem(const std::string& text, const std::string& source) {
    Document doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) doc.fail("", "expected an object");
    for (auto& [key, _] : root.items())
        if (key != "basis" && key != "W" && key != "e" && key != "x") doc.fail("/" + key, "unknown field");

    const json& x = doc.array(doc.field(root, "", "x"), "/x");
    std::size_t d = x.size();
    if (d == 0) doc.fail("/x", "empty vector");
    auto columns = [&](const std::string& key) {
        const json& cols = doc.array(doc.field(root, "", key), "/" + key);
        if (cols.empty()) doc.fail("/" + key, "expected at least one column");
        std::vector<RatVector> out;
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.push_back(doc.rat_vector(cols[j], "/" + key + "/" + std::to_string(j), d));
        return RatMatrix::from_columns(out, d);
    };

    LatticeSumProblem p;
    RatMatrix basis = columns("basis");
    if (rank(basis) != basis.cols()) doc.fail("/basis", "basis vectors must be independent");
    p.lattice = EmbeddedLattice(basis);
    p.w = columns("W");
    const json& e = doc.array(doc.field(root, "", "e"), "/e");
    for (std::size_t j = 0; j < e.size(); ++j) {
        std::string at = "/e/" + std::to_string(j);
        if (!e[j].is_number_integer()) doc.fail(at, "expected an integer");
        p.e.push_back(int(e[j].get<std::int64_t>()));
    }
    p.x = doc.rat_vector(x, "/x", d);
    try {
        validate(p);
    } catch (const std::invalid_argument& err) {
        std::string msg = err.what();
        std::string at = msg.find("exponent") != std::string::npos ? "/e"
                         : msg.find("W") != std::string::npos      ? "/W"
                                                                   : "";
        doc.fail(at, msg);
    }
    return p;
}

LatticeSumProblem load_lattice_problem(const std::string& path) {
    return parse_lattice_problem(read_file(path), path);
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const RatVector& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

json to_json(const IntVector& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

json to_json(const ExactValue& v) {
    json terms = json::array();
    for (auto& t : v.angle_terms())
        terms.push_back({{"coeff", t.coeff.str()}, {"sign", t.angle.sign}, {"cos_squared", t.angle.cos_squared.str()}});
    return {{"text", v.str()}, {"rational", v.rational_part().str()}, {"angles", terms}, {"numeric", eval_numeric(v)}};
}

json polytope_summary(const Polytope& p) {
    json vs = json::array();
    for (auto& v : p.vertices()) vs.push_back(to_json(v));
    json hs = json::array();
    for (auto& in : p.inequalities()) hs.push_back({{"a", to_json(in.a)}, {"b", in.b.str()}});
    return {{"dim", p.dim()},
            {"vertices", vs},
            {"inequalities", hs},
            {"denominator", p.denominator().get_str()},
            {"volume", p.volume().str()}};
}

json local_data_json(const LocalData& ld) {
    json facets = json::array();
    for (auto& f : ld.facets)
        facets.push_back({{"face", tight_label(f.tight_set)},
                          {"v_F", to_json(f.v_F)},
                          {"x_F_dot", f.x_F_dot.str()},
                          {"vol_star", f.vol_star.str()},
                          {"norm_sq", f.norm_sq.str()}});
    json ridges = json::array();
    for (auto& g : ld.ridges)
        ridges.push_back({{"face", tight_label(g.tight_set)},
                          {"facets", {g.f1, g.f2}},
                          {"v_F1", to_json(g.v_F1)},
                          {"v_F2", to_json(g.v_F2)},
                          {"c_G", to_string(g.c_G)},
                          {"h", g.h.get_str()},
                          {"k", g.k.get_str()},
                          {"h_inv", g.h_inv.get_str()},
                          {"x1", g.x1.str()},
                          {"x2", g.x2.str()},
                          {"dot1", g.dot1.str()},
                          {"dot2", g.dot2.str()},
                          {"vol_star", g.vol_star.str()},
                          {"v_F1_G", to_json(g.v_F1_G)},
                          {"v_F2_G", to_json(g.v_F2_G)},
                          {"v2", to_json(g.v2)},
                          {"xbar", to_json(g.xbar)}});
    return {{"facets", facets}, {"ridges", ridges}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

json parse_report(const std::string& text) {
    json r = json::parse(text);
    if (!r.is_object() || !r.contains("schema") || r["schema"] != kSchemaVersion)
        throw std::invalid_argument("not a schema " + kSchemaVersion + " report");
    return r;
}

}  // namespace eak::io
