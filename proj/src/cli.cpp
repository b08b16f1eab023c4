#include "subdiv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace subdiv {

namespace {

namespace fs = std::filesystem;

struct BaryInput {
    int n;
};

using Input = std::variant<RankedPoset, Sfs, ComplexInput, BaryInput>;

constexpr int kMaxBaryRank = 7;

int parse_bary_rank(const std::string& text) {
    int n = 0;
    std::istringstream in(text);
    if (!(in >> n) || !in.eof()) throw ParseError("bary expects an integer rank, got \"" + text + "\"");
    if (n < 1 || n > kMaxBaryRank) throw ParseError("bary rank must lie in 1.." + std::to_string(kMaxBaryRank));
    return n;
}

Input parse_input(const Json& j, bool force_regular) {
    if (!j.is_object()) throw ParseError("input must be a JSON object");
    if (j.contains("bary")) {
        const Json& b = j.at("bary");
        if (!b.is_number_integer()) throw ParseError("\"bary\" must be an integer");
        return BaryInput{parse_bary_rank(std::to_string(b.get<long long>()))};
    }
    if (j.contains("gamma")) return sfs_from_json(j);
    if (j.contains("vertices")) return complex_from_json(j, force_regular);
    if (j.contains("elements")) return poset_from_json(j);
    throw ParseError("cannot tell the input kind: expected \"elements\", \"gamma\", \"vertices\" or \"bary\"");
}

Sfs bary_sfs(int n) {
    auto base = std::make_shared<const RankedPoset>(boolean_algebra(n));
    Barycentric b = barycentric(*base);
    return Sfs::validate(std::make_shared<const RankedPoset>(std::move(b.poset)), base, b.sigma);
}

// A command failed in a way the caller should see with a specific exit code.
struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw Failure{code, message}; }

const char* input_kind(const Input& in) {
    switch (in.index()) {
        case 0: return "poset";
        case 1: return "subdivision";
        case 2: return "polytope";
        default: return "bary";
    }
}

// Named polynomials in output order.
using Named = std::vector<std::pair<std::string, LaurentPoly>>;

std::string render_named(const Named& polys, OutputFormat format, const std::string& command) {
    if (format == OutputFormat::json) {
        Json out = Json::object();
        for (const auto& [name, p] : polys) out[name] = poly_to_json(p);
        return Json{{"command", command}, {"result", out}}.dump(2) + "\n";
    }
    if (format == OutputFormat::svg) fail(exit_code::usage, "svg output is only available for diamond");
    std::string s;
    if (polys.size() == 1) return polys.front().second.to_string() + "\n";
    for (const auto& [name, p] : polys) s += name + ": " + p.to_string() + "\n";
    return s;
}

Sfs& require_sfs(Input& in, std::optional<Sfs>& holder, const std::string& command) {
    if (auto* s = std::get_if<Sfs>(&in)) return *s;
    if (auto* b = std::get_if<BaryInput>(&in)) return holder.emplace(bary_sfs(b->n));
    if (auto* c = std::get_if<ComplexInput>(&in)) return holder.emplace(c->complex.to_sfs());
    fail(exit_code::validation, command + " needs a subdivision, a complex or a bary input");
}

ComplexInput& require_complex(Input& in, const std::string& command) {
    if (auto* c = std::get_if<ComplexInput>(&in)) return *c;
    fail(exit_code::validation, command + " needs a polytope or complex input, got a " + input_kind(in));
}

RankedPoset& require_poset(Input& in, const std::string& command) {
    if (auto* p = std::get_if<RankedPoset>(&in)) return *p;
    fail(exit_code::validation, command + " needs a poset input, got a " + input_kind(in));
}

Named absolute_invariants(Sfs& s) {
    return {{"h", s.h_gamma()}, {"local_h", s.local_h()}, {"mixed_h", s.mixed_h()}};
}

Named polytope_invariants(SubdivisionInvariants& inv) {
    PolytopeInvariants& base = inv.base();
    return {{"hstar", base.hstar()},
            {"local_hstar", base.local_hstar()},
            {"mixed_hstar", base.mixed_hstar()},
            {"limit_mixed", inv.limit_mixed()},
            {"local_limit_mixed", inv.local_limit_mixed()},
            {"refined", inv.refined()}};
}

void oracle_check(const LatticePolytope& p, const LaurentPoly& hstar_value, const LaurentPoly& local_value,
                  std::string& err) {
    if (!p.is_simplex()) fail(exit_code::validation, "--oracle needs a simplex");
    const BoxOracle box = hstar_box_oracle(p);
    if (box.hstar != hstar_value)
        fail(exit_code::contradiction, "h* by interpolation " + hstar_value.to_string() + " differs from the box oracle " +
                                           box.hstar.to_string());
    if (box.local != local_value)
        fail(exit_code::contradiction, "l* by the alternating sum " + local_value.to_string() +
                                           " differs from the box oracle " + box.local.to_string());
    err += "oracle: agrees\n";
}

std::vector<Diamond> select_diamonds(SubdivisionInvariants& inv, const JobSpec& spec) {
    std::vector<Diamond> out;
    const int d = inv.dim();
    const std::string& kind = spec.diamond;
    if (kind != "all" && kind != "hstar" && kind != "local" && kind != "r-local")
        fail(exit_code::usage, "unknown diamond kind " + kind);
    if (kind == "all" || kind == "hstar") out.push_back(hstar_diamond(inv.limit_mixed(), d));
    if (kind == "all" || kind == "local") out.push_back(local_hstar_diamond(inv.local_limit_mixed(), d));
    if (kind == "all" || kind == "r-local") {
        std::vector<Diamond> layers = r_local_diamonds(inv.refined(), d);
        if (spec.layer >= 0) {
            if (spec.layer >= static_cast<int>(layers.size()))
                fail(exit_code::usage, "no r-local table for r = " + std::to_string(spec.layer));
            out.push_back(layers[static_cast<std::size_t>(spec.layer)]);
        } else {
            for (auto& l : layers) out.push_back(std::move(l));
        }
    }
    return out;
}

std::string diamond_title(const Diamond& d) {
    if (d.kind == Diamond::Kind::r_local) return "r-local diamond r=" + std::to_string(d.layer);
    return std::string(to_string(d.kind)) + " diamond";
}

std::string render_diamonds(const std::vector<Diamond>& ds, OutputFormat format) {
    if (format == OutputFormat::json) {
        Json arr = Json::array();
        for (const auto& d : ds) arr.push_back(diamond_to_json(d));
        return Json{{"command", "diamond"}, {"result", arr}}.dump(2) + "\n";
    }
    if (format == OutputFormat::svg) {
        if (ds.size() != 1) fail(exit_code::usage, "svg output needs a single table: pick --kind, and --layer for r-local");
        return render_svg(ds.front());
    }
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.size() > 1) s += (i ? "\n" : "") + diamond_title(ds[i]) + ":\n";
        s += render_text(ds[i]);
    }
    return s;
}

struct CheckOutcome {
    Named polys;
    Report report;
};

CheckOutcome run_checks(Input& in) {
    CheckOutcome out;
    if (auto* p = std::get_if<RankedPoset>(&in)) {
        out.report.add("eulerian", is_eulerian(*p));
        if (is_eulerian(*p)) {
            out.polys = {{"g", g_polynomial(*p)}, {"h", h_polynomial(*p)}};
            Sfs id = Sfs::identity(std::make_shared<const RankedPoset>(*p));
            out.report.merge(check_sfs(id), "identity: ");
        }
        return out;
    }
    if (auto* c = std::get_if<ComplexInput>(&in)) {
        SubdivisionInvariants inv(c->complex);
        out.polys = absolute_invariants(inv.sfs());
        for (auto& np : polytope_invariants(inv)) out.polys.push_back(std::move(np));
        out.report.merge(check_polytope(inv.base()), "polytope: ");
        out.report.merge(check_subdivision(inv));
        out.report.merge(check_bounds(inv), "bounds: ");
        if (c->coarse) {
            SubdivisionInvariants coarse(*c->coarse);
            out.report.merge(check_refinement(inv, coarse));
        }
        return out;
    }
    std::optional<Sfs> holder;
    Sfs& s = require_sfs(in, holder, "check");
    const bool absolute = is_lower_eulerian(s.gamma()) && is_eulerian(s.base());
    if (absolute) out.polys = absolute_invariants(s);
    out.report.merge(check_sfs(s));
    return out;
}

// Compares the "expect" object of a case against computed polynomials.
void compare_expectations(const Json& j, const Named& polys, Report& report) {
    if (!j.contains("expect")) return;
    const Json& e = j.at("expect");
    if (!e.is_object()) throw ParseError("\"expect\" must map names to polynomials");
    std::map<std::string, const LaurentPoly*> by_name;
    for (const auto& [name, p] : polys) by_name[name] = &p;
    for (const auto& [name, value] : e.items()) {
        const auto it = by_name.find(name);
        if (it == by_name.end()) throw ParseError("\"expect\" names an unknown polynomial " + name);
        LaurentPoly want;
        try {
            want = poly_from_json(value);
        } catch (const LaurentError& err) {
            throw ParseError("expected " + name + ": " + err.what());
        }
        report.expect_equal("expect " + name, *it->second, want);
    }
}

std::string render_check(const CheckOutcome& c, OutputFormat format, const std::vector<std::string>& warnings) {
    if (format == OutputFormat::json) {
        Json polys = Json::object();
        for (const auto& [name, p] : c.polys) polys[name] = poly_to_json(p);
        return Json{{"command", "check"}, {"polynomials", polys}, {"report", report_to_json(c.report)}, {"warnings", warnings}}
                   .dump(2) +
               "\n";
    }
    if (format == OutputFormat::svg) fail(exit_code::usage, "svg output is only available for diamond");
    std::string s;
    for (const auto& [name, p] : c.polys) s += name + ": " + p.to_string() + "\n";
    for (const auto& r : c.report.results()) {
        s += (r.passed ? "PASS " : "FAIL ") + r.name;
        if (!r.detail.empty()) s += (r.passed ? " (" + r.detail + ")" : ": " + r.detail);
        s += "\n";
    }
    const std::size_t total = c.report.results().size();
    s += "summary: " + std::to_string(total - c.report.failures()) + "/" + std::to_string(total) + " properties passed\n";
    return s;
}

std::string describe(const SfsError& e) {
    std::string s = std::string("sfs ") + to_string(e.code()) + ": " + e.what();
    if (e.y()) s += " [witness y=#" + std::to_string(*e.y());
    if (e.x()) s += std::string(e.y() ? ", " : " [witness ") + "x=#" + std::to_string(*e.x());
    if (e.y() || e.x()) s += "]";
    return s;
}

JobResult run_single(const JobSpec& spec) {
    JobResult result;
    const std::string& cmd = spec.command;
    static const std::set<std::string> known = {"gpoly",       "hpoly",       "local-h", "mixed-h", "hstar",
                                                "local-hstar", "mixed-hstar", "limit-mixed", "refined", "diamond",
                                                "check",       "bary"};
    if (!known.count(cmd)) fail(exit_code::usage, "unknown command " + cmd);

    // parsing phase
    Json j;
    Input in = BaryInput{0};
    std::vector<std::string> warnings;
    try {
        if (cmd == "bary") {
            in = BaryInput{parse_bary_rank(spec.input)};
        } else {
            j = read_json_file(spec.input);
            in = parse_input(j, spec.regular);
            if (auto* c = std::get_if<ComplexInput>(&in)) warnings = c->warnings;
        }
    } catch (const LaurentError& e) {
        throw ParseError(e.what());
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
    for (const auto& w : warnings) result.err += "warning: " + w + "\n";

    if (cmd == "gpoly") {
        result.out = render_named({{"g", g_polynomial(require_poset(in, cmd))}}, spec.format, cmd);
    } else if (cmd == "hpoly") {
        result.out = render_named({{"h", h_polynomial(require_poset(in, cmd))}}, spec.format, cmd);
    } else if (cmd == "local-h" || cmd == "mixed-h") {
        std::optional<Sfs> holder;
        Sfs& s = require_sfs(in, holder, cmd);
        if (cmd == "local-h")
            result.out = render_named({{"local_h", s.local_h()}}, spec.format, cmd);
        else
            result.out = render_named({{"mixed_h", s.mixed_h()}}, spec.format, cmd);
    } else if (cmd == "hstar" || cmd == "local-hstar" || cmd == "mixed-hstar") {
        PolytopeInvariants inv(require_complex(in, cmd).complex.polytope());
        if (spec.oracle) oracle_check(inv.polytope(), inv.hstar(), inv.local_hstar(), result.err);
        if (cmd == "hstar") result.out = render_named({{"hstar", inv.hstar()}}, spec.format, cmd);
        if (cmd == "local-hstar") result.out = render_named({{"local_hstar", inv.local_hstar()}}, spec.format, cmd);
        if (cmd == "mixed-hstar") result.out = render_named({{"mixed_hstar", inv.mixed_hstar()}}, spec.format, cmd);
    } else if (cmd == "limit-mixed") {
        SubdivisionInvariants inv(require_complex(in, cmd).complex);
        result.out = render_named({{"limit_mixed", inv.limit_mixed()}, {"local_limit_mixed", inv.local_limit_mixed()}},
                                  spec.format, cmd);
    } else if (cmd == "refined") {
        SubdivisionInvariants inv(require_complex(in, cmd).complex);
        result.out = render_named({{"refined", inv.refined()}}, spec.format, cmd);
    } else if (cmd == "diamond") {
        SubdivisionInvariants inv(require_complex(in, cmd).complex);
        result.out = render_diamonds(select_diamonds(inv, spec), spec.format);
    } else if (cmd == "bary") {
        const int n = std::get<BaryInput>(in).n;
        if (spec.format == OutputFormat::json) {
            result.out = sfs_to_json(bary_sfs(n)).dump(2) + "\n";
        } else {
            Sfs s = bary_sfs(n);
            result.out = render_named(absolute_invariants(s), spec.format, cmd);
        }
    } else {  // check
        CheckOutcome outcome = run_checks(in);
        compare_expectations(j, outcome.polys, outcome.report);
        result.out = render_check(outcome, spec.format, warnings);
        if (!outcome.report.all_passed()) {
            result.exit_code = exit_code::contradiction;
            result.err += "error: " + std::to_string(outcome.report.failures()) +
                          " properties failed; an identity failing on valid input indicates an internal bug\n";
        }
    }
    return result;
}

template <class F>
JobResult guarded(F&& body) {
    JobResult r;
    try {
        return body();
    } catch (const Failure& f) {
        r.exit_code = f.code;
        r.err = "error: " + f.message + "\n";
    } catch (const ParseError& e) {
        r.exit_code = exit_code::parse;
        r.err = std::string("parse error: ") + e.what() + "\n";
    } catch (const SfsError& e) {
        r.exit_code = exit_code::validation;
        r.err = "validation error: " + describe(e) + "\n";
    } catch (const PosetError& e) {
        r.exit_code = exit_code::validation;
        r.err = std::string("validation error: poset: ") + e.what() + "\n";
    } catch (const GeometryError& e) {
        r.exit_code = exit_code::validation;
        r.err = std::string("validation error: geometry ") + to_string(e.kind()) + ": " + e.what() + "\n";
    } catch (const KlsError& e) {
        r.exit_code = exit_code::validation;
        r.err = std::string("validation error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        r.exit_code = exit_code::contradiction;
        r.err = std::string("internal error: ") + e.what() + "\n";
    }
    return r;
}

JobResult run_corpus(const JobSpec& spec) {
    JobResult result;
    const fs::path dir(spec.input);
    if (!fs::is_directory(dir)) fail(exit_code::parse, "not a directory: " + spec.input);
    std::vector<fs::path> cases;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") cases.push_back(entry.path());
    std::sort(cases.begin(), cases.end());
    if (cases.empty()) {
        result.err = "warning: no cases in " + spec.input + "\n";
        result.out = "corpus: 0 cases\n";
        return result;
    }
    std::size_t passed = 0;
    Json items = Json::array();
    for (const auto& path : cases) {
        JobSpec one = spec;
        one.command = "check";
        one.input = path.string();
        one.format = OutputFormat::text;
        const JobResult r = guarded([&] { return run_single(one); });
        result.exit_code = std::max(result.exit_code, r.exit_code);
        const std::string name = path.filename().string();
        std::string first_failure;
        std::size_t properties = 0;
        std::istringstream lines(r.out);
        for (std::string line; std::getline(lines, line);) {
            if (line.rfind("PASS ", 0) == 0) ++properties;
            if (line.rfind("FAIL ", 0) == 0) {
                ++properties;
                if (first_failure.empty()) first_failure = line.substr(5);
            }
        }
        if (first_failure.empty() && r.exit_code != exit_code::ok) {
            first_failure = r.err.substr(0, r.err.find('\n'));
        }
        if (r.exit_code == exit_code::ok) ++passed;
        if (spec.format == OutputFormat::json) {
            items.push_back({{"case", name}, {"exit_code", r.exit_code}, {"properties", properties}, {"failure", first_failure}});
        } else if (r.exit_code == exit_code::ok) {
            result.out += "PASS " + name + " (" + std::to_string(properties) + " properties)\n";
        } else {
            result.out += "FAIL " + name + " [exit " + std::to_string(r.exit_code) + "]: " + first_failure + "\n";
        }
    }
    const std::string summary =
        "corpus: " + std::to_string(passed) + "/" + std::to_string(cases.size()) + " cases passed";
    if (spec.format == OutputFormat::json)
        result.out = Json{{"command", "corpus"}, {"cases", items}, {"passed", passed}, {"total", cases.size()}}.dump(2) + "\n";
    else
        result.out += summary + "\n";
    return result;
}

Json int_vector_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.convert_to<long long>());
    return a;
}

// One top-level key per line with compact values.
std::string dump_case(const Json& c) {
    std::string s = "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : c.items()) {
        s += "  " + Json(key).dump() + ": " + value.dump() + (++i < c.size() ? ",\n" : "\n");
    }
    return s + "}\n";
}

JobResult run_generate(const JobSpec& spec) {
    JobResult result;
    const fs::path dir(spec.input);
    fs::create_directories(dir);
    std::mt19937_64 rng(spec.seed);
    result.out = "seed: " + std::to_string(spec.seed) + "\n";
    for (int i = 0; i < spec.count; ++i) {
        const int dim = 1 + i % 3;
        Json c = random_complex_case(rng, dim);
        const ComplexInput in = complex_from_json(c);
        SubdivisionInvariants inv(in.complex);
        Json expect = Json::object();
        for (const auto& [name, p] : polytope_invariants(inv)) expect[name] = p.to_string();
        c["expect"] = expect;
        c["seed"] = spec.seed;
        std::ostringstream name;
        name << "random_" << (i < 10 ? "0" : "") << i << ".json";
        std::ofstream(dir / name.str()) << dump_case(c);
        result.out += "wrote " + (dir / name.str()).string() + "\n";
    }
    return result;
}

}  // namespace

LatticePolytope random_simplex(std::mt19937_64& rng, int dim, long max_coord) {
    std::uniform_int_distribution<long> coord(0, max_coord);
    for (;;) {
        std::vector<IntVec> pts;
        for (int i = 0; i <= dim; ++i) {
            IntVec x;
            for (int k = 0; k < dim; ++k) x.push_back(Integer(coord(rng)));
            pts.push_back(std::move(x));
        }
        LatticePolytope p = LatticePolytope::from_points(pts);
        if (p.dim() == dim && p.is_simplex()) return p;
    }
}

Json random_complex_case(std::mt19937_64& rng, int dim) {
    constexpr std::size_t kMaxPoints = 20;
    const long max_coord = dim == 1 ? 4 : dim == 2 ? 3 : 2;
    std::uniform_int_distribution<long> coord(0, max_coord);
    std::uniform_int_distribution<int> extra(0, 3), coarse_height(0, 2), fine_height(0, 3), trivial_coarse(0, 3);
    for (;;) {
        std::vector<IntVec> generators;
        const int count = dim + 2 + extra(rng);
        for (int i = 0; i < count; ++i) {
            IntVec x;
            for (int k = 0; k < dim; ++k) x.push_back(Integer(coord(rng)));
            generators.push_back(std::move(x));
        }
        const LatticePolytope p = LatticePolytope::from_points(generators);
        if (p.dim() != dim) continue;
        const std::vector<IntVec> points = lattice_points(p);
        if (points.size() > kMaxPoints || points.size() < static_cast<std::size_t>(dim + 3)) continue;

        const bool trivial = trivial_coarse(rng) == 0;
        std::vector<long> coarse, fine;
        for (std::size_t i = 0; i < points.size(); ++i) {
            coarse.push_back(trivial ? 0 : coarse_height(rng));
            fine.push_back(64 * coarse.back() + fine_height(rng));
        }
        Json vertices = Json::array(), pts = Json::array();
        for (const auto& v : p.vertices()) vertices.push_back(int_vector_json(v));
        for (const auto& v : points) pts.push_back(int_vector_json(v));
        Json coarse_json = Json::object();
        if (!trivial) coarse_json = {{"points", pts}, {"heights", coarse}, {"regular", true}};
        Json c = {{"dim", dim},   {"vertices", vertices}, {"points", pts},
                  {"heights", fine}, {"regular", true},      {"coarse", coarse_json}};
        try {
            const ComplexInput in = complex_from_json(c);
            refinement_map(in.complex, *in.coarse);
        } catch (const SfsError&) {
            continue;
        } catch (const GeometryError&) {
            continue;
        }
        return c;
    }
}

JobResult run(const JobSpec& spec) {
    return guarded([&] {
        if (spec.command == "corpus") return run_corpus(spec);
        if (spec.command == "generate") return run_generate(spec);
        return run_single(spec);
    });
}

}  // namespace subdiv
