// Command-line front end for the zonoset library.
//
// Exit codes: 0 success, 1 domain or validation error, 2 usage error.

#include <CLI11.hpp>

#include <zonoset/zonoset.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace zonoset;

/// Failures that are the caller's fault rather than the data's.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write '" + path + "'");
    out << text;
}

/// First keyword of a file, ignoring comments and blank lines.
std::string header_of(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream words(line);
        std::string w;
        if (words >> w) return w;
    }
    return {};
}

std::string stats_line(const ZPolytope& P) {
    const auto s = size_stats(P);
    return "# p=" + std::to_string(s.p) + " h=" + std::to_string(s.h) + " mu=" + std::to_string(s.mu) +
           " Nz=" + std::to_string(s.n_z) + '\n';
}

std::string format_interval(const Interval& r) {
    return '[' + format_double(r.lo) + ", " + format_double(r.hi) + ']';
}

complexity::Range parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw usage_error("--sweep expects a:b, got '" + s + "'");
    try {
        std::size_t used = 0;
        const auto a = std::stoll(s.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(s);
        const auto b = std::stoll(s.substr(colon + 1), &used);
        if (used != s.size() - colon - 1) throw std::invalid_argument(s);
        if (a > b) throw usage_error("--sweep range is empty: '" + s + "'");
        return {a, b};
    } catch (const std::logic_error&) {
        throw usage_error("--sweep expects integers a:b, got '" + s + "'");
    }
}

struct Options {
    std::string input, second, output = "-", matrix, expr_file, set_file;
    std::string to, order = "input", method = "pz", kind = "zono-point";
    double tol = default_dedup_tol;
    unsigned taylor_order = 6, cap = 8, splits = 4, enum_cap = default_enumeration_cap;
    bool inflate = false, csv = false, pz = false;
    std::int64_t n = 0, m = 0, m1 = 0, m2 = 0;
    std::string sweep;
    std::vector<double> values;
};

int cmd_validate(const Options& o) {
    const std::string text = read_input(o.input);
    if (header_of(text) == "vpoly") {
        parse_vpoly(text);
        std::cout << "OK\n";
        return 0;
    }
    const auto violations = validate(parse_zpoly_unchecked(text));
    if (violations.empty()) {
        std::cout << "OK\n";
        return 0;
    }
    for (const auto& v : violations) std::cout << v << '\n';
    return 1;
}

int cmd_convert(const Options& o) {
    const std::string text = read_input(o.input);
    if (o.to == "z") {
        const auto ordering = o.order == "greedy" ? VertexOrdering::greedy_nearest : VertexOrdering::input;
        const auto Z = v_to_z(parse_vpoly(text), ordering);
        write_output(o.output, serialize_zpoly(Z) + stats_line(Z));
    } else {
        write_output(o.output, serialize_vpoly(z_to_v(parse_zpoly(text), o.tol, o.enum_cap)));
    }
    return 0;
}

int cmd_op(const std::string& which, const Options& o) {
    ZPolytope R;
    if (which == "map") {
        R = linear_map(parse_matrix(read_input(o.matrix)), parse_zpoly(read_input(o.input)));
    } else {
        if (o.input == "-" && o.second == "-") throw usage_error("only one operand may come from standard input");
        const auto a = parse_zpoly(read_input(o.input));
        const auto b = parse_zpoly(read_input(o.second));
        R = which == "sum" ? minkowski_sum(a, b) : convex_hull(a, b);
    }
    write_output(o.output, serialize_zpoly(R) + stats_line(R));
    return 0;
}

int cmd_vertices(const Options& o) {
    write_output(o.output, serialize_vpoly(z_to_v(parse_zpoly(read_input(o.input)), o.tol, o.enum_cap)));
    return 0;
}

int cmd_bound(const Options& o) {
    if (o.expr_file == "-" && o.set_file == "-") throw usage_error("only one input may come from standard input");
    const Expr f = parse_expr(read_input(o.expr_file));
    const ZPolytope S = parse_zpoly(read_input(o.set_file));
    BoundConfig cfg;
    cfg.taylor_order = o.taylor_order;
    cfg.degree_cap = o.cap;
    cfg.split_depth = o.splits;
    cfg.epsilon_inflation = o.inflate;
    cfg.enumeration_cap = o.enum_cap;
    cfg.method = o.method == "ia-box" ? BoundMethod::ia_box
                 : o.method == "tm-box" ? BoundMethod::tm_box
                                        : BoundMethod::pz;
    std::cout << format_interval(bound(f, S, cfg)) << '\n';
    return 0;
}

int cmd_regularize(const Options& o) {
    const auto r = regularize(parse_zpoly(read_input(o.input)));
    std::string map = "# factor map:";
    for (auto k : r.factor_map) map += ' ' + std::to_string(k);
    write_output(o.output, serialize_zpoly(r.set) + stats_line(r.set) + map + '\n');
    return 0;
}

int cmd_evaluate(const Options& o) {
    const auto P = parse_zpoly(read_input(o.input));
    const Vec x = o.pz ? evaluate_pz(lift_to_pz(P), o.values) : evaluate(P, o.values);
    std::string line;
    for (std::size_t i = 0; i < x.size(); ++i) line += (i ? " " : "") + format_double(x[i]);
    std::cout << line << '\n';
    return 0;
}

int cmd_box(const Options& o) {
    for (const auto& r : interval_hull(parse_zpoly(read_input(o.input)), o.enum_cap))
        std::cout << format_interval(r) << '\n';
    return 0;
}

int cmd_stats(const Options& o) {
    std::cout << stats_line(parse_zpoly(read_input(o.input))).substr(2);
    return 0;
}

int cmd_contains(const Options& o) {
    const auto V = parse_vpoly(read_input(o.input));
    if (o.values.size() != V.dim) throw usage_error("--point needs " + std::to_string(V.dim) + " coordinates");
    std::cout << (lp::in_convex_hull(o.values, V.vertices) ? "true" : "false") << '\n';
    return 0;
}

int cmd_complexity(const Options& o) {
    using namespace complexity;
    const bool one_m = o.m > 0;
    if (o.kind == "zono-point" || o.kind == "zono-zono") {
        const Case kind = o.kind == "zono-point" ? Case::zono_point : Case::zono_zono;
        if (o.n < 1) throw usage_error("complexity needs -n");
        Range m, m2;
        if (kind == Case::zono_point) {
            if (!o.sweep.empty())
                m = parse_range(o.sweep);
            else if (one_m)
                m = Range::single(o.m);
            else
                throw usage_error("zono-point needs -m or --sweep");
        } else {
            const std::int64_t first = o.m1 > 0 ? o.m1 : o.m;
            if (first < 1) throw usage_error("zono-zono needs --m1");
            m = Range::single(first);
            if (!o.sweep.empty())
                m2 = parse_range(o.sweep);
            else if (o.m2 > 0)
                m2 = Range::single(o.m2);
            else
                throw usage_error("zono-zono needs --m2 or --sweep");
        }
        const auto rows = emit_table(kind, Range::single(o.n), m, m2);
        std::string out;
        if (o.csv) {
            out = csv_header(kind) + '\n';
            for (const auto& r : rows) out += to_csv(r) + '\n';
        } else {
            for (const auto& r : rows) {
                out += std::string(to_string(r.kind)) + " n=" + std::to_string(r.n) + " m=" + std::to_string(r.m);
                if (r.m2) out += " m2=" + std::to_string(*r.m2);
                out += " N_V=" + std::to_string(r.n_v) + " (" + std::string(to_string(r.v_kind)) + ")";
                out += " N_H=" + std::to_string(r.n_h) + " (" + std::string(to_string(r.h_kind)) + ")";
                out += " N_Z=" + std::to_string(r.n_z) + " (" + std::string(to_string(r.z_kind)) + ")\n";
            }
        }
        std::cout << out;
        return 0;
    }
    if (!one_m) throw usage_error("--case " + o.kind + " needs -m");
    if (o.kind == "alg1") {
        const auto s = alg1_size_predictor(static_cast<std::uint64_t>(o.m), static_cast<std::size_t>(std::max<std::int64_t>(o.n, 0)));
        std::cout << (o.csv ? "q,n,p,h,mu,n_z\n" : "") << o.m << ',' << o.n << ',' << s.p << ',' << s.h << ','
                  << s.mu << ',' << s.n_z << '\n';
        return 0;
    }
    count_t v = 0;
    if (o.kind == "zonotope-vertices")
        v = zonotope_vertex_count(o.n, o.m);
    else if (o.kind == "rep-v")
        v = rep_size_v(o.n, o.m);
    else
        v = rep_size_h(o.n, o.m);
    std::cout << (o.csv ? "case,n,m,value\n" : "") << o.kind << ',' << o.n << ',' << o.m << ',' << v << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z-representation polytopes: set operations, conversions, complexity and range bounding"};
    app.require_subcommand(1);
    Options o;

    auto* validate_cmd = app.add_subcommand("validate", "check a zpoly (or vpoly) file");
    validate_cmd->add_option("file", o.input, "input file, '-' for stdin")->required();

    auto* convert_cmd = app.add_subcommand("convert", "convert between vertex and Z-representation");
    convert_cmd->add_option("--to", o.to, "target representation")->required()->check(CLI::IsMember({"z", "v"}));
    convert_cmd->add_option("input", o.input, "input file, '-' for stdin")->required();
    convert_cmd->add_option("-o,--output", o.output, "output file, '-' for stdout");
    convert_cmd->add_option("--order", o.order, "vertex pairing order for --to z")
        ->check(CLI::IsMember({"input", "greedy"}));
    convert_cmd->add_option("--tol", o.tol, "duplicate and redundancy tolerance for --to v")->check(CLI::NonNegativeNumber);
    convert_cmd->add_option("--enum-cap", o.enum_cap, "largest factor count to enumerate");

    auto* op_cmd = app.add_subcommand("op", "closed-form set operations");
    op_cmd->require_subcommand(1);
    auto* map_cmd = op_cmd->add_subcommand("map", "linear map M * P");
    map_cmd->add_option("-m,--matrix", o.matrix, "matrix file")->required();
    map_cmd->add_option("set", o.input, "zpoly file")->required();
    map_cmd->add_option("-o,--output", o.output, "output file");
    auto* sum_cmd = op_cmd->add_subcommand("sum", "Minkowski sum");
    auto* hull_cmd = op_cmd->add_subcommand("hull", "convex hull");
    for (auto* c : {sum_cmd, hull_cmd}) {
        c->add_option("a", o.input, "first zpoly file")->required();
        c->add_option("b", o.second, "second zpoly file")->required();
        c->add_option("-o,--output", o.output, "output file");
    }

    auto* vertices_cmd = app.add_subcommand("vertices", "vertices of a zpoly as vpoly text");
    vertices_cmd->add_option("set", o.input, "zpoly file")->required();
    vertices_cmd->add_option("--tol", o.tol, "duplicate and redundancy tolerance")->check(CLI::NonNegativeNumber);
    vertices_cmd->add_option("--enum-cap", o.enum_cap, "largest factor count to enumerate");
    vertices_cmd->add_option("-o,--output", o.output, "output file");

    auto* bound_cmd = app.add_subcommand("bound", "range of an expression over a zpoly");
    bound_cmd->add_option("-f,--function", o.expr_file, "expression file")->required();
    bound_cmd->add_option("-s,--set", o.set_file, "zpoly file")->required();
    bound_cmd->add_option("--method", o.method)->check(CLI::IsMember({"pz", "tm-box", "ia-box"}));
    bound_cmd->add_option("--order", o.taylor_order, "Taylor order")->check(CLI::PositiveNumber);
    bound_cmd->add_option("--cap", o.cap, "polynomial degree cap")->check(CLI::Range(1u, 15u));
    bound_cmd->add_option("--splits", o.splits, "domain splitting depth")->check(CLI::NonNegativeNumber);
    bound_cmd->add_option("--enum-cap", o.enum_cap, "largest factor count to enumerate for box methods");
    bound_cmd->add_flag("--inflate", o.inflate, "relative 1e-12 widening of every interval operation");

    auto* complexity_cmd = app.add_subcommand("complexity", "representation sizes");
    complexity_cmd->add_option("--case", o.kind)->check(
        CLI::IsMember({"zono-point", "zono-zono", "zonotope-vertices", "rep-v", "rep-h", "alg1"}));
    complexity_cmd->add_option("-n", o.n, "dimension");
    complexity_cmd->add_option("-m", o.m, "generator count (or vertex, facet or q count)");
    complexity_cmd->add_option("--m1", o.m1, "generators of the first zonotope");
    complexity_cmd->add_option("--m2", o.m2, "generators of the second zonotope");
    complexity_cmd->add_option("--sweep", o.sweep, "a:b, varies m (zono-point) or m2 (zono-zono)");
    complexity_cmd->add_flag("--csv", o.csv, "CSV with header");

    auto* regularize_cmd = app.add_subcommand("regularize", "merge, prune and renumber");
    regularize_cmd->add_option("set", o.input, "zpoly file")->required();
    regularize_cmd->add_option("-o,--output", o.output, "output file");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "point of a zpoly for given factor values");
    evaluate_cmd->add_option("set", o.input, "zpoly file")->required();
    evaluate_cmd->add_option("--alpha", o.values, "factor values in [-1,1]")->required()->expected(0, -1);
    evaluate_cmd->add_flag("--pz", o.pz, "evaluate through the polynomial-zonotope form");

    auto* box_cmd = app.add_subcommand("box", "exact interval hull of a zpoly");
    box_cmd->add_option("set", o.input, "zpoly file")->required();
    box_cmd->add_option("--enum-cap", o.enum_cap, "largest factor count to enumerate");

    auto* stats_cmd = app.add_subcommand("stats", "p, h, mu and N_Z of a zpoly");
    stats_cmd->add_option("set", o.input, "zpoly file")->required();

    auto* contains_cmd = app.add_subcommand("contains", "point membership in a vpoly via LP");
    contains_cmd->add_option("set", o.input, "vpoly file")->required();
    contains_cmd->add_option("--point", o.values, "coordinates")->required()->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o);
        if (convert_cmd->parsed()) return cmd_convert(o);
        if (map_cmd->parsed()) return cmd_op("map", o);
        if (sum_cmd->parsed()) return cmd_op("sum", o);
        if (hull_cmd->parsed()) return cmd_op("hull", o);
        if (vertices_cmd->parsed()) return cmd_vertices(o);
        if (bound_cmd->parsed()) return cmd_bound(o);
        if (complexity_cmd->parsed()) return cmd_complexity(o);
        if (regularize_cmd->parsed()) return cmd_regularize(o);
        if (evaluate_cmd->parsed()) return cmd_evaluate(o);
        if (box_cmd->parsed()) return cmd_box(o);
        if (stats_cmd->parsed()) return cmd_stats(o);
        if (contains_cmd->parsed()) return cmd_contains(o);
    } catch (const usage_error& e) {
        std::cerr << "zonoset: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "zonoset: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
