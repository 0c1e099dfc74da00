#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "fibertrace/errors.hpp"
#include "fibertrace/oracle.hpp"
#include "fibertrace/pipeline.hpp"
#include "fibertrace/render.hpp"
#include "fibertrace/serialize.hpp"

namespace fibertrace::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax:
        case ErrorKind::Slot:
        case ErrorKind::SlotMismatch:
        case ErrorKind::NotAKnot:
        case ErrorKind::NotClosed:
        case ErrorKind::EmptyWord:
        case ErrorKind::LinkingOne:
        case ErrorKind::MismatchedM:
            return kValidation;
        case ErrorKind::DegenerateConfig:
        case ErrorKind::Degeneracy:
        case ErrorKind::ZeroChord:
        case ErrorKind::OriginIncidence:
        case ErrorKind::EqualRho:
        case ErrorKind::DegenerateTangent:
            return kGenericity;
        case ErrorKind::AssemblyMismatch:
        case ErrorKind::OrientationClash:
        case ErrorKind::InvariantViolation:
            return kInvariant;
    }
    return kInvariant;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AnnularDiagram load(const std::string& path) { return parse_diagram_text(read_file(path)); }

Rational parse_value(const std::string& key, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("bad value for " + key + ": " + text);
    }
}

struct ConfigFlags {
    std::string epsilon;
    std::string depth;
    std::string radius;
    std::vector<std::string> overrides;

    EmbeddingConfig build() const {
        EmbeddingConfig c;
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw UsageError("--config expects key=value, got " + kv);
            std::string key = kv.substr(0, eq);
            std::string value = kv.substr(eq + 1);
            if (key == "radius") {
                c.radius = parse_value(key, value);
            } else if (key == "curvature") {
                c.curvature = parse_value(key, value);
            } else if (key == "epsilon") {
                c.epsilon = parse_value(key, value);
            } else if (key == "depth") {
                c.depth = parse_value(key, value);
            } else if (key == "max_retries") {
                try {
                    c.max_retries = std::stoi(value);
                } catch (const std::exception&) {
                    throw UsageError("bad value for max_retries: " + value);
                }
            } else {
                throw UsageError("unknown config key " + key);
            }
        }
        if (!epsilon.empty()) c.epsilon = parse_value("epsilon", epsilon);
        if (!depth.empty()) c.depth = parse_value("depth", depth);
        if (!radius.empty()) c.radius = parse_value("radius", radius);
        return c;
    }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

MorseWord with_suffix(const MorseWord& word, const std::string& suffix) {
    MorseWord w = word;
    for (const auto& t : parse_morse_word(suffix).tokens) w.tokens.push_back(t);
    return w;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace graphs and writhe invariants of knots in the complement of an axis", "fibertrace"};
    app.require_subcommand(1);

    ConfigFlags flags;
    std::string seed;
    app.add_option("--epsilon", flags.epsilon, "perturbation scale of the rest positions");
    app.add_option("--depth", flags.depth, "crossing depth");
    app.add_option("--radius", flags.radius, "base radius of the rest parabola");
    app.add_option("--config", flags.overrides, "embedding override key=value")->take_all();
    app.add_option("--seed", seed, "not supported; the pipeline is deterministic");

    std::string file;
    std::string file_b;
    std::string svg_out, dot_out, json_out;
    bool closed_braids = false;
    std::string append_pure;
    int samples = 4096;
    double tolerance = 1e-6;

    auto* validate = app.add_subcommand("validate", "parse a diagram and print its summary");
    validate->add_option("FILE", file)->required();

    auto* build = app.add_subcommand("build", "assemble the trace graph");
    build->add_option("FILE", file)->required();
    auto* out_group = build->add_option_group("output");
    out_group->add_option("--svg", svg_out, "write the torus projection as SVG");
    out_group->add_option("--dot", dot_out, "write the graph as Graphviz source");
    out_group->add_option("--json", json_out, "write the graph as JSON");
    out_group->require_option(0, 1);

    auto* writhes = app.add_subcommand("writhes", "print the writhe table");
    writhes->add_option("FILE", file)->required();

    auto* events = app.add_subcommand("events", "dump the exact event lists");
    events->add_option("FILE", file)->required();

    auto* bound = app.add_subcommand("bound", "lower bounds on fiber quadrisecants between two knots");
    bound->add_option("FILE_A", file)->required();
    bound->add_option("FILE_B", file_b)->required();
    bound->add_flag("--closed-braids", closed_braids, "also report the ordered bound");
    bound->add_option("--append-pure", append_pure, "append a pure braid word to both inputs");

    auto* check = app.add_subcommand("check", "genericity and invariant suites");
    check->add_option("FILE", file)->required();

    auto* oracle = app.add_subcommand("oracle", "compare with a sampled floating-point sweep");
    oracle->add_option("FILE", file)->required();
    oracle->add_option("--samples", samples, "grid steps per sector")->check(CLI::Range(64, 1 << 20));
    oracle->add_option("--tolerance", tolerance, "phi tolerance for matching");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    }
    if (!seed.empty() || app.count("--seed") > 0) {
        err << "usage: --seed is not accepted; the pipeline is deterministic\n";
        return kUsage;
    }

    try {
        const EmbeddingConfig config = flags.build();
        if (*validate) {
            AnnularDiagram d = load(file);
            nlohmann::ordered_json j;
            j["word"] = d.word().to_string();
            j["strands"] = d.strands();
            j["m"] = d.m();
            j["sectors"] = d.sector_count();
            j["max_strands"] = d.max_strands();
            j["closed_braid"] = d.is_closed_braid();
            out << j.dump(2) << "\n";
        } else if (*build) {
            Analysis a = analyze(load(file), config);
            if (!svg_out.empty()) {
                write_output(svg_out, render_svg(a.graph, a.embedding, a.crossings), out);
            } else if (!dot_out.empty()) {
                write_output(dot_out, render_dot(a.graph), out);
            } else {
                write_output(json_out, graph_json(a.graph, a.embedding.config), out);
            }
        } else if (*writhes) {
            AnnularDiagram d = load(file);
            if (std::abs(d.m()) == 1) throw Error(ErrorKind::LinkingOne, "writhes are undefined for lk(K, L) = +-1");
            Analysis a = analyze(d, config);
            out << writhe_json(*a.table, a.embedding.config);
        } else if (*events) {
            Analysis a = analyze(load(file), config);
            out << events_json(a.events, a.embedding.config);
        } else if (*bound) {
            AnnularDiagram da = load(file);
            AnnularDiagram db = load(file_b);
            if (!append_pure.empty()) {
                da = build_diagram(with_suffix(da.word(), append_pure), da.strands());
                db = build_diagram(with_suffix(db.word(), append_pure), db.strands());
            }
            if (da.m() != db.m()) {
                throw Error(ErrorKind::MismatchedM,
                            "linking numbers differ: " + std::to_string(da.m()) + " vs " + std::to_string(db.m()));
            }
            if (std::abs(da.m()) == 1) throw Error(ErrorKind::LinkingOne, "bounds are undefined for lk(K, L) = +-1");
            if (closed_braids && !(da.is_closed_braid() && db.is_closed_braid())) {
                throw Error(ErrorKind::NotClosed, "--closed-braids needs two closed braids");
            }
            Analysis a = analyze(da, config);
            Analysis b = analyze(db, config);
            out << bound_json(theorem_bounds(*a.table, *b.table, closed_braids), a.embedding.config);
        } else if (*check) {
            AnnularDiagram d = load(file);
            Embedding e = embed(d, config);
            GenericityReport g = genericity_check(d, e);
            nlohmann::ordered_json j = nlohmann::ordered_json::parse(genericity_json(g, e.config));
            int code = kOk;
            if (!g.ok()) {
                e = embed_generic(d, config);
                j["retried"] = nlohmann::ordered_json::parse(genericity_json(genericity_check(d, e), e.config));
            }
            EventSet ev = enumerate_events(d, e);
            TraceGraph graph = assemble(d, e, ev);
            InvariantReport inv = check_graph_invariants(d, e, graph);
            SymmetryReport sym = verify_symmetry(d, e, graph);
            j["invariants"] = inv.violations;
            j["symmetry"] = {{"ok", sym.ok}, {"issues", sym.issues}};
            auto hits = quadrisecant_scan(d, e, 256);
            j["quadrisecant_hits"] = hits.size();
            if (!inv.ok() || !sym.ok) code = kInvariant;
            out << j.dump(2) << "\n";
            if (code != kOk) err << "invariant violations found\n";
            return code;
        } else if (*oracle) {
            Analysis a = analyze(load(file), config);
            SampledSweep s = sampled_sweep(a.diagram, a.embedding, samples);
            ExactResults ex{&a.events, &a.graph, &a.crossings, a.table ? &*a.table : nullptr};
            ComparisonReport r = compare(ex, s, tolerance);
            out << comparison_json(r, s, a.embedding.config);
            if (!r.full_match()) {
                err << "exact and sampled results differ\n";
                return kInvariant;
            }
        }
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const SyntaxError& e) {
        err << e.what() << " (at offset " << e.position() << ")\n";
        return kValidation;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return kOk;
}

}  // namespace fibertrace::cli
