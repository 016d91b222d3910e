// lcdsub: verify inputs, search unbiased families, build and decode LCD subspace codes.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lcdsub/constructions.hpp"
#include "lcdsub/error.hpp"
#include "lcdsub/io.hpp"
#include "lcdsub/simulator.hpp"

using namespace lcdsub;

namespace {

// Validation failure that is not a library exception (exit code 1).
struct Rejected {
    Json report;
};

void emit(const Json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write file", out_path);
    out << text;
}

std::vector<IntMatrix> load_int(const std::vector<std::string>& files) {
    std::vector<IntMatrix> out;
    for (const auto& f : files) out.push_back(read_matrix_file(f).to_int());
    return out;
}

// One file: adjacency matrix of a distance-regular graph. Several: relation matrices A_0..A_d.
AssociationScheme load_scheme(const std::vector<std::string>& files) {
    auto mats = load_int(files);
    if (mats.size() == 1) return scheme_from_drg(Graph::from_adjacency(std::move(mats[0])));
    return AssociationScheme::from_matrices(std::move(mats));
}

Partition load_partition(const std::string& spec, std::size_t points) {
    if (spec.empty() || spec == "singleton") return Partition::singleton(points);
    if (spec == "one-cell") return Partition::one_cell(points);
    if (spec.starts_with("consecutive:")) {
        const std::size_t cell = std::stoul(spec.substr(12));
        return consecutive_partition(points, cell);
    }
    return read_partition_file(spec, points);
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "relation indices must be non-negative integers", tok);
        }
    }
    if (out.empty()) throw Error(ErrorCode::ParseError, "empty relation index list");
    return out;
}

Json scheme_summary(const AssociationScheme& s) {
    const std::size_t d = s.class_count();
    Json p = Json::array();
    for (std::size_t i = 0; i <= d; ++i) {
        Json pi = Json::array();
        for (std::size_t j = 0; j <= d; ++j) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k <= d; ++k) row.push_back(s.p(i, j, k));
            pi.push_back(row);
        }
        p.push_back(pi);
    }
    return Json{{"points", s.point_count()}, {"classes", d}, {"intersection_numbers", p}};
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string what;
    std::vector<std::string> files;
    std::int64_t weight = 0;
    std::string partition;
    std::string array;
    std::string out;
};

Json verify(const VerifyArgs& a) {
    Json rep{{"kind", a.what}, {"ok", true}};
    if (a.what == "hadamard" || a.what == "weighing") {
        const bool had = a.what == "hadamard";
        Json each = Json::array();
        auto mats = load_int(a.files);
        for (std::size_t i = 0; i < mats.size(); ++i) {
            Json e{{"file", a.files[i]}, {"order", mats[i].rows()}};
            if (had) {
                const auto h = HadamardMatrix::validate(mats[i]);
                try {
                    e["regular"] = h.is_regular();
                    e["bush_type"] = h.is_bush_type();
                } catch (const Error&) {
                    e["regular"] = false;
                    e["bush_type"] = false;
                }
            } else {
                WeighingMatrix::validate(mats[i], a.weight);
                e["weight"] = a.weight;
            }
            each.push_back(e);
        }
        rep["matrices"] = each;
        if (mats.size() > 1) {
            UnbiasedSet set(had ? MatrixKind::Hadamard : MatrixKind::Weighing, mats, a.weight);
            rep["mutually_unbiased"] = true;
        }
    } else if (a.what == "scheme") {
        rep["scheme"] = scheme_summary(load_scheme(a.files));
    } else if (a.what == "drg") {
        if (a.files.size() != 1) throw Error(ErrorCode::InvalidSpec, "verify drg takes one adjacency file");
        const auto g = Graph::from_adjacency(read_matrix_file(a.files[0]).to_int());
        const auto res = intersection_array(g);
        if (const auto* w = std::get_if<NotDrgWitness>(&res)) {
            rep["ok"] = false;
            rep["witness"] = {{"u", w->u + 1}, {"v", w->v + 1}, {"distance", w->k}, {"what", w->what}};
            throw Rejected{rep};
        }
        const auto& arr = std::get<IntersectionArray>(res);
        rep["intersection_array"] = arr.to_string();
        if (!a.array.empty()) {
            const bool match = parse_intersection_array(a.array) == arr;
            rep["matches_expected"] = match;
            if (!match) {
                rep["ok"] = false;
                throw Rejected{rep};
            }
        }
    } else if (a.what == "partition") {
        if (a.partition.empty()) throw Error(ErrorCode::InvalidSpec, "verify partition needs --partition");
        const auto s = load_scheme(a.files);
        const auto part = load_partition(a.partition, s.point_count());
        const auto eq = verify_equitable(part, s.matrices());
        rep["cells"] = part.cell_count();
        rep["equal_cells"] = part.equal_cells();
        rep["equitable"] = eq.ok;
        if (!eq.ok) {
            rep["ok"] = false;
            rep["witness"] = eq.witness.value_or("");
            throw Rejected{rep};
        }
        const auto q = quotient_matrices(part, s.matrices());
        const auto alg = verify_quotient_algebra(s.tensor(), q);
        rep["quotient_identity"] = alg.ok;
        if (!alg.ok) {
            rep["ok"] = false;
            rep["witness"] = alg.witness.value_or("");
            throw Rejected{rep};
        }
        Json qs = Json::array();
        for (const auto& m : q.m) {
            std::vector<std::vector<std::int64_t>> rows;
            for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
            qs.push_back(rows);
        }
        rep["quotients"] = qs;
    } else {
        throw Error(ErrorCode::InvalidSpec, "unknown verify target", a.what);
    }
    return rep;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
    std::size_t order = 4;
    std::size_t target = 2;
    std::uint64_t budget = 100'000'000;
    std::string kind = "hadamard";
    std::int64_t weight = 0;
    std::vector<std::string> seeds;
    bool bush = false;
    std::string prefix = "mub";
};

Json search(const SearchArgs& a) {
    SearchOptions opt;
    opt.order = a.order;
    opt.node_budget = a.budget;
    opt.bush = a.bush;
    opt.kind = a.kind == "weighing" ? MatrixKind::Weighing : MatrixKind::Hadamard;
    opt.weight = a.weight;
    const auto seeds = load_int(a.seeds);
    const auto run = extend_unbiased_set(seeds, a.target, opt);
    Json files = Json::array();
    for (std::size_t i = 0; i < run.set.size(); ++i) {
        const std::string path = a.prefix + std::to_string(i + 1) + ".txt";
        write_matrix_file(path, to_matrix_file(run.set[i]));
        files.push_back(path);
    }
    Json rep{{"order", a.order},
             {"kind", a.kind},
             {"target", a.target},
             {"size", run.set.size()},
             {"status", to_string(run.last_status)},
             {"bound_capped", run.bound_capped},
             {"files", files},
             {"informational", {{"nodes", run.nodes}}}};
    if (a.kind == "weighing") rep["weight"] = a.weight;
    if (run.set.size() < a.target) throw Rejected{rep};
    return rep;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
    std::string theorem;
    std::vector<std::string> inputs;
    std::uint32_t p = 2;
    std::uint32_t r = 1;
    bool alpha_sweep = false;
    bool include_zero_x = false;
    std::uint64_t cap = 1u << 20;
    std::uint64_t sample = 10'000;
    std::uint64_t seed = 0;
    std::string partition;
    std::string group;
    std::string index;
    std::int64_t weight = 0;
    std::uint32_t alpha = 1;
    std::string out;
};

Json construct(const ConstructArgs& a) {
    PipelineOptions opt;
    opt.p = a.p;
    opt.r = a.r;
    opt.enumeration.alpha_sweep = a.alpha_sweep;
    opt.enumeration.include_zero_x = a.include_zero_x;
    opt.enumeration.cap = a.cap;
    opt.enumeration.sample = a.sample;
    opt.enumeration.seed = a.seed;
    const std::string& t = a.theorem;
    if (a.inputs.empty()) throw Error(ErrorCode::InvalidSpec, "construct needs input files");

    if (t == "thm42") {
        const auto s = load_scheme(a.inputs);
        const auto idx = parse_index_list(a.index.empty() ? "1" : a.index);
        if (idx.size() != 1) throw Error(ErrorCode::InvalidSpec, "thm42 takes a single relation index");
        return to_json(lcd_code_thm42(s, load_partition(a.partition, s.point_count()), idx[0], a.p, a.r, a.alpha));
    }
    if (t == "thm43") {
        if (a.index.empty()) throw Error(ErrorCode::InvalidSpec, "thm43 needs --index");
        const auto s = load_scheme(a.inputs);
        return to_json(thm43(s, load_partition(a.partition, s.point_count()), parse_index_list(a.index), opt));
    }
    if (t == "cor45") {
        if (a.index.empty() || a.group.empty()) throw Error(ErrorCode::InvalidSpec, "cor45 needs --group and --index");
        if (a.inputs.size() != 1) throw Error(ErrorCode::InvalidSpec, "cor45 takes one adjacency file");
        const auto g = Graph::from_adjacency(read_matrix_file(a.inputs[0]).to_int());
        PermutationGroup group(g.vertex_count(), read_group_file(a.group, g.vertex_count()));
        return to_json(cor45(g, group, parse_index_list(a.index), opt));
    }

    const bool weighing = t == "thm52" || t == "thm55";
    if (weighing && a.weight <= 0) throw Error(ErrorCode::InvalidSpec, "weighing families need --weight");
    UnbiasedSet set(weighing ? MatrixKind::Weighing : MatrixKind::Hadamard, load_int(a.inputs),
                    weighing ? a.weight : 0);
    const std::size_t order = set.order();
    if (t == "thm51") return to_json(thm51(set, opt));
    if (t == "thm52") return to_json(thm52(set, opt));
    if (t == "thm54") return to_json(thm54(set, load_partition(a.partition, order), opt));
    if (t == "thm55") return to_json(thm55(set, load_partition(a.partition, order), opt));
    // scheme points: (m + 1) * order for the 3- and 5-class schemes, twice that for the 8-class one
    const std::size_t points = (set.size() + 1) * order;
    if (t == "thm56") return to_json(thm56(set, load_partition(a.partition, points), opt));
    if (t == "thm58") return to_json(thm58(set, load_partition(a.partition, points), opt));
    if (t == "thm59") return to_json(thm59(set, load_partition(a.partition, 2 * points), opt));
    throw Error(ErrorCode::InvalidSpec, "unknown construction", t);
}

// ---- decode / simulate / screen --------------------------------------------

SubspaceCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open file", path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what(), path);
    }
    return code_from_json(j);
}

Json decode(const std::string& code_path, const std::string& received_path, const std::string& method) {
    const auto code = load_code(code_path);
    const MatrixFq g = read_matrix_file(received_path).to_fq();
    if (g.field()->order() != code.field()->order())
        throw Error(ErrorCode::FieldMismatch, "received word and code use different fields");
    if (g.cols() != code.ambient_dim())
        throw Error(ErrorCode::AmbientMismatch, "received word has the wrong length",
                    std::to_string(g.cols()) + "!=" + std::to_string(code.ambient_dim()));
    const Subspace received = g.rows() ? Subspace::row_space(MatrixFq::from_rows(code.field(), g.to_rows(), g.cols()))
                                       : Subspace::zero(code.field(), code.ambient_dim());
    Json rep{{"method", method}, {"received_dim", received.dim()}};
    if (method == "naive" || method == "both") rep["naive"] = to_json(decode_naive(code, received));
    if (method == "projection" || method == "both") rep["projection"] = to_json(decode_projection(code, received));
    if (method == "both") rep["agree"] = rep["naive"] == rep["projection"];
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct, verify and decode LCD subspace codes"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Validate matrices, schemes, graphs and partitions");
    verify_cmd->add_option("what", va.what, "hadamard | weighing | scheme | drg | partition")
        ->required()
        ->check(CLI::IsMember({"hadamard", "weighing", "scheme", "drg", "partition"}));
    verify_cmd->add_option("files", va.files, "Matrix files")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--weight", va.weight, "Weight k of W(n,k)");
    verify_cmd->add_option("--partition", va.partition, "Partition file, or singleton | one-cell | consecutive:K");
    verify_cmd->add_option("--array", va.array, "Expected intersection array, e.g. {3,2;1,1}");
    verify_cmd->add_option("-o,--output", va.out, "Report path (default stdout)");

    SearchArgs sa;
    auto* search_cmd = app.add_subcommand("search", "Backtracking search for unbiased families");
    std::string search_what;
    search_cmd->add_option("what", search_what, "mub")->required()->check(CLI::IsMember({"mub"}));
    search_cmd->add_option("--order", sa.order, "Matrix order")->required();
    search_cmd->add_option("--target", sa.target, "Family size wanted");
    search_cmd->add_option("--budget", sa.budget, "Node budget per extension step");
    search_cmd->add_option("--kind", sa.kind, "hadamard | weighing")->check(CLI::IsMember({"hadamard", "weighing"}));
    search_cmd->add_option("--weight", sa.weight, "Weight k for weighing matrices");
    search_cmd->add_option("--seed-file", sa.seeds, "Matrices to extend")->check(CLI::ExistingFile);
    search_cmd->add_flag("--bush", sa.bush, "Restrict to Bush-type matrices");
    search_cmd->add_option("--prefix", sa.prefix, "Output path prefix; files are <prefix>1.txt, <prefix>2.txt, ...");

    ConstructArgs ca;
    auto* construct_cmd = app.add_subcommand("construct", "Build an LCD subspace code");
    construct_cmd->add_option("theorem", ca.theorem, "thm42 | thm43 | cor45 | thm51 | thm52 | thm54 | thm55 | thm56 | thm58 | thm59")
        ->required()
        ->check(CLI::IsMember({"thm42", "thm43", "cor45", "thm51", "thm52", "thm54", "thm55", "thm56", "thm58", "thm59"}));
    construct_cmd->add_option("inputs", ca.inputs, "Scheme, graph or matrix files")->check(CLI::ExistingFile);
    construct_cmd->add_option("--p", ca.p, "Characteristic");
    construct_cmd->add_option("--r", ca.r, "Extension degree, q = p^r");
    construct_cmd->add_flag("--alpha-sweep", ca.alpha_sweep, "Run over every nonzero alpha");
    construct_cmd->add_flag("--include-zero-x", ca.include_zero_x, "Also add [0 | alpha I]");
    construct_cmd->add_option("--cap", ca.cap, "Largest algebra size enumerated completely");
    construct_cmd->add_option("--sample", ca.sample, "Samples drawn above the cap");
    construct_cmd->add_option("--seed", ca.seed, "Sampling seed");
    construct_cmd->add_option("--partition", ca.partition, "Partition file, or singleton | one-cell | consecutive:K");
    construct_cmd->add_option("--group", ca.group, "Group generator file (cor45)")->check(CLI::ExistingFile);
    construct_cmd->add_option("--index", ca.index, "Relation indices, comma separated");
    construct_cmd->add_option("--weight", ca.weight, "Weight k for weighing families");
    construct_cmd->add_option("--alpha", ca.alpha, "Nonzero field element alpha (thm42)");
    construct_cmd->add_option("-o,--output", ca.out, "Report path (default stdout)");

    std::string code_path, received_path, method = "both", decode_out;
    auto* decode_cmd = app.add_subcommand("decode", "Decode a received subspace");
    decode_cmd->add_option("--code", code_path, "Code or report JSON")->required()->check(CLI::ExistingFile);
    decode_cmd->add_option("--received", received_path, "fq matrix whose rows span the received word")
        ->required()
        ->check(CLI::ExistingFile);
    decode_cmd->add_option("--method", method, "naive | projection | both")
        ->check(CLI::IsMember({"naive", "projection", "both"}));
    decode_cmd->add_option("-o,--output", decode_out, "Report path (default stdout)");

    std::string sim_code, sim_out;
    ChannelSpec spec;
    std::size_t trials = 1000;
    SimulationOptions sim_opt;
    bool records = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Operator-channel simulation of both decoders");
    sim_cmd->add_option("--code", sim_code, "Code or report JSON")->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("--erasures", spec.erasures, "Dimensions dropped");
    sim_cmd->add_option("--errors", spec.errors, "Random vectors added");
    sim_cmd->add_option("--trials", trials, "Number of trials");
    sim_cmd->add_option("--seed", spec.seed, "RNG seed");
    sim_cmd->add_option("--threads", sim_opt.threads, "Worker threads");
    sim_cmd->add_flag("--records", records, "Include per-trial records");
    sim_cmd->add_option("-o,--output", sim_out, "Report path (default stdout)");

    std::vector<std::string> screen_files;
    std::uint32_t screen_p = 2;
    auto* screen_cmd = app.add_subcommand("screen", "Relation index sets passing the divisibility screen");
    screen_cmd->add_option("--scheme", screen_files, "Adjacency file of a distance-regular graph, or relation matrices")
        ->required()
        ->check(CLI::ExistingFile);
    screen_cmd->add_option("--p", screen_p, "Prime");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify_cmd) emit(verify(va), va.out);
        else if (*search_cmd) emit(search(sa), "");
        else if (*construct_cmd) emit(construct(ca), ca.out);
        else if (*decode_cmd) emit(decode(code_path, received_path, method), decode_out);
        else if (*sim_cmd) emit(to_json(run_experiment(load_code(sim_code), spec, trials, sim_opt), records), sim_out);
        else if (*screen_cmd) {
            const auto s = load_scheme(screen_files);
            emit(Json{{"p", screen_p}, {"classes", s.class_count()}, {"index_sets", divisibility_screen(s.tensor(), screen_p)}},
                 "");
        }
    } catch (const Rejected& r) {
        emit(r.report, "");
        return 1;
    } catch (const Error& e) {
        Json j = error_json(std::string(to_string(e.code())), e.witness());
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json("InternalError", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}
