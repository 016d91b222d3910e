#include "lcdsub/io.hpp"

#include <fstream>
#include <sstream>

#include "lcdsub/error.hpp"

namespace lcdsub {

namespace {

[[noreturn]] void parse_fail(const std::string& what, const std::string& source, std::size_t line) {
    throw Error(ErrorCode::ParseError, what, source + ":" + std::to_string(line));
}

// Content lines with comments removed, paired with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.emplace_back(no, line);
    }
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

std::int64_t to_integer(const std::string& tok, const std::string& source, std::size_t line) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        parse_fail("not an integer: '" + tok + "'", source, line);
    }
    if (used != tok.size()) parse_fail("not an integer: '" + tok + "'", source, line);
    return v;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open file", path);
    return in;
}

const char* kind_name(MatrixFileKind k) {
    switch (k) {
        case MatrixFileKind::Int: return "int";
        case MatrixFileKind::Pm1: return "pm1";
        case MatrixFileKind::Zpm1: return "zpm1";
        case MatrixFileKind::Fq: return "fq";
    }
    return "?";
}

std::vector<std::size_t> parse_index_line(const std::string& line, std::size_t limit, const std::string& source,
                                          std::size_t no) {
    std::vector<std::size_t> out;
    for (const auto& tok : tokens(line)) {
        const std::int64_t v = to_integer(tok, source, no);
        if (v < 1 || static_cast<std::uint64_t>(v) > limit)
            parse_fail("index " + tok + " outside 1.." + std::to_string(limit), source, no);
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    return out;
}

}  // namespace

IntMatrix MatrixFile::to_int() const {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
    return m;
}

MatrixFq MatrixFile::to_fq() const {
    if (kind != MatrixFileKind::Fq) throw Error(ErrorCode::ParseError, "expected a matrix of kind fq", kind_name(kind));
    MatrixFq m(Field::from_order(q), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<Field::Elem>(entries[i * cols + j]);
    return m;
}

MatrixFile parse_matrix_file(std::istream& in, const std::string& source) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty matrix file", source);
    const auto& [hno, header] = lines.front();
    const auto head = tokens(header);
    MatrixFile m;
    if (head.empty() || head.size() > 4) parse_fail("header must be 'kind rows cols [q]'", source, hno);
    if (head[0] == "int") m.kind = MatrixFileKind::Int;
    else if (head[0] == "pm1") m.kind = MatrixFileKind::Pm1;
    else if (head[0] == "zpm1") m.kind = MatrixFileKind::Zpm1;
    else if (head[0] == "fq") m.kind = MatrixFileKind::Fq;
    else parse_fail("unknown matrix kind '" + head[0] + "'", source, hno);
    const bool fq = m.kind == MatrixFileKind::Fq;
    if (head.size() != (fq ? 4u : 3u))
        parse_fail(fq ? "fq header needs 'fq rows cols q'" : "header must be 'kind rows cols'", source, hno);
    const std::int64_t rows = to_integer(head[1], source, hno);
    const std::int64_t cols = to_integer(head[2], source, hno);
    if (rows < 0 || cols < 0) parse_fail("negative dimension", source, hno);
    m.rows = static_cast<std::size_t>(rows);
    m.cols = static_cast<std::size_t>(cols);
    if (fq) {
        const std::int64_t q = to_integer(head[3], source, hno);
        if (q < 2 || q > Field::kMaxOrder) parse_fail("field order out of range", source, hno);
        m.q = static_cast<std::uint32_t>(q);
        try {
            Field::from_order(m.q);
        } catch (const Error&) {
            parse_fail("not a prime power: " + head[3], source, hno);
        }
    }
    if (lines.size() - 1 != m.rows)
        parse_fail("expected " + std::to_string(m.rows) + " rows, found " + std::to_string(lines.size() - 1), source,
                   hno);
    m.entries.reserve(m.rows * m.cols);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& [no, line] = lines[r];
        const auto toks = tokens(line);
        if (toks.size() != m.cols)
            parse_fail("expected " + std::to_string(m.cols) + " entries, found " + std::to_string(toks.size()), source,
                       no);
        for (const auto& tok : toks) {
            const std::int64_t v = to_integer(tok, source, no);
            bool ok = true;
            switch (m.kind) {
                case MatrixFileKind::Int: break;
                case MatrixFileKind::Pm1: ok = v == 1 || v == -1; break;
                case MatrixFileKind::Zpm1: ok = v >= -1 && v <= 1; break;
                case MatrixFileKind::Fq: ok = v >= 0 && v < static_cast<std::int64_t>(m.q); break;
            }
            if (!ok) parse_fail("entry " + tok + " not allowed in a " + kind_name(m.kind) + " matrix", source, no);
            m.entries.push_back(v);
        }
    }
    return m;
}

MatrixFile read_matrix_file(const std::string& path) {
    auto in = open_in(path);
    return parse_matrix_file(in, path);
}

std::string format_matrix_file(const MatrixFile& m) {
    std::ostringstream out;
    out << kind_name(m.kind) << ' ' << m.rows << ' ' << m.cols;
    if (m.kind == MatrixFileKind::Fq) out << ' ' << m.q;
    out << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out << ' ';
            out << m.entries[i * m.cols + j];
        }
        out << '\n';
    }
    return out.str();
}

void write_matrix_file(const std::string& path, const MatrixFile& m) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write file", path);
    out << format_matrix_file(m);
}

MatrixFile to_matrix_file(const IntMatrix& m) {
    MatrixFile f;
    f.rows = m.rows();
    f.cols = m.cols();
    f.entries = m.data();
    bool pm1 = true, zpm1 = true;
    for (auto v : f.entries) {
        pm1 = pm1 && (v == 1 || v == -1);
        zpm1 = zpm1 && v >= -1 && v <= 1;
    }
    f.kind = pm1 && !f.entries.empty() ? MatrixFileKind::Pm1 : zpm1 ? MatrixFileKind::Zpm1 : MatrixFileKind::Int;
    if (f.kind == MatrixFileKind::Zpm1 && f.entries.empty()) f.kind = MatrixFileKind::Int;
    return f;
}

MatrixFile to_matrix_file(const MatrixFq& m) {
    MatrixFile f;
    f.kind = MatrixFileKind::Fq;
    f.rows = m.rows();
    f.cols = m.cols();
    f.q = m.field()->order();
    f.entries.assign(m.data().begin(), m.data().end());
    return f;
}

std::vector<std::vector<std::size_t>> parse_group_file(std::istream& in, std::size_t degree, const std::string& source) {
    std::vector<std::vector<std::size_t>> gens;
    for (const auto& [no, line] : content_lines(in)) {
        auto img = parse_index_line(line, degree, source, no);
        if (img.size() != degree)
            parse_fail("generator has " + std::to_string(img.size()) + " images, degree is " + std::to_string(degree),
                       source, no);
        std::vector<bool> seen(degree, false);
        for (auto v : img) {
            if (seen[v]) parse_fail("generator is not a permutation", source, no);
            seen[v] = true;
        }
        gens.push_back(std::move(img));
    }
    return gens;
}

std::vector<std::vector<std::size_t>> read_group_file(const std::string& path, std::size_t degree) {
    auto in = open_in(path);
    return parse_group_file(in, degree, path);
}

std::string format_group_file(const std::vector<std::vector<std::size_t>>& generators) {
    std::ostringstream out;
    for (const auto& g : generators) {
        for (std::size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g[i] + 1;
        out << '\n';
    }
    return out.str();
}

Partition parse_partition_file(std::istream& in, std::size_t points, const std::string& source) {
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& [no, line] : content_lines(in)) cells.push_back(parse_index_line(line, points, source, no));
    return Partition::from_cells(std::move(cells), points);
}

Partition read_partition_file(const std::string& path, std::size_t points) {
    auto in = open_in(path);
    return parse_partition_file(in, points, path);
}

std::string format_partition_file(const Partition& part) {
    return format_group_file(part.cells());
}

Json to_json(const CodeParams& p) {
    Json j;
    j["n"] = p.n;
    j["size"] = p.size;
    j["d"] = p.d ? Json(*p.d) : Json(nullptr);
    j["d_exhaustive"] = p.d_exhaustive;
    j["K"] = std::vector<std::size_t>(p.dims.begin(), p.dims.end());
    j["q"] = p.q;
    return j;
}

Json code_to_json(const SubspaceCode& code) {
    Json words = Json::array();
    for (const auto& w : code.codewords()) words.push_back(w.basis().to_rows());
    return Json{{"q", code.field()->order()}, {"n", code.ambient_dim()}, {"codewords", words}};
}

SubspaceCode code_from_json(const Json& j) {
    try {
        const auto q = j.at("q").get<std::uint32_t>();
        const auto n = j.at("n").get<std::size_t>();
        const FieldPtr f = Field::from_order(q);
        std::vector<Subspace> words;
        for (const auto& w : j.at("codewords")) {
            const auto rows = w.get<std::vector<std::vector<Field::Elem>>>();
            for (const auto& r : rows)
                if (r.size() != n) throw Error(ErrorCode::ParseError, "codeword row has the wrong length", std::to_string(words.size() + 1));
            words.push_back(rows.empty() ? Subspace::zero(f, n) : Subspace::row_space(MatrixFq::from_rows(f, rows, n)));
        }
        return SubspaceCode(std::move(words));
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed code JSON: ") + e.what());
    }
}

Json to_json(const ConstructionReport& r) {
    Json j = code_to_json(r.code);
    Json hyp = Json::array();
    for (const auto& h : r.hypotheses) hyp.push_back({{"name", h.name}, {"ok", true}, {"detail", h.detail}});
    j["theorem"] = r.pipeline;
    j["source"] = r.source;
    j["hypotheses"] = hyp;
    j["params"] = to_json(r.params);
    j["p"] = r.p;
    j["r"] = r.r;
    j["t"] = r.t;
    j["algebra_dim"] = r.algebra_dim;
    j["lcd_verified"] = r.lcd_verified;
    j["lcd_exhaustive"] = r.lcd_exhaustive;
    j["enumeration_complete"] = r.enumeration_complete;
    j["pairs_formed"] = r.pairs_formed;
    j["classes_nonzero_x"] = r.classes_nonzero_x;
    j["classes_with_zero_x"] = r.classes_with_zero_x;
    j["min_rank_distance"] = r.min_rank_distance ? Json(*r.min_rank_distance) : Json(nullptr);
    j["block_identity"] = r.block_identity;
    j["block_pairs_checked"] = r.block_pairs_checked;
    return j;
}

Json to_json(const ClassicalReport& r) {
    return Json{{"theorem", "thm42"},
                {"n", r.n},
                {"k", r.k},
                {"q", r.q},
                {"gram_det", r.gram_det},
                {"lcd", r.lcd},
                {"generator", r.generator.to_rows()}};
}

Json to_json(const DecodeOutcome& d) {
    return Json{{"failed", d.failed()},
                {"codeword", d.index ? Json(*d.index + 1) : Json(nullptr)},
                {"distance", d.distance},
                {"distances", d.distances}};
}

Json to_json(const TrialStats& s, bool with_records) {
    Json j{{"trials", s.trials},
           {"correct", s.correct},
           {"failure", s.failure},
           {"wrong", s.wrong},
           {"agreement", s.agreement},
           {"mean_received_distance", s.mean_received_distance},
           {"mean_decoded_distance", s.mean_decoded_distance},
           {"informational",
            {{"naive_median_ns", s.timings.naive_median_ns}, {"projection_median_ns", s.timings.projection_median_ns}}}};
    if (with_records) {
        Json recs = Json::array();
        for (const auto& r : s.records)
            recs.push_back({{"sent", r.sent + 1},
                            {"verdict", to_string(r.verdict)},
                            {"decoded", r.decoded ? Json(*r.decoded + 1) : Json(nullptr)},
                            {"received_distance", r.received_distance},
                            {"decoded_distance", r.decoded_distance}});
        j["records"] = recs;
    }
    return j;
}

Json error_json(const std::string& error, const std::string& witness) {
    return Json{{"error", error}, {"witness", witness}};
}

}  // namespace lcdsub
