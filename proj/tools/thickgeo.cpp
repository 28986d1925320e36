// thickgeo command-line front end.
//
// Exit status: 0 pass, 1 validation failure, 2 input error, 3 budget error.

#include "thickgeo/io.hpp"
#include "thickgeo/thickgeo.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace thickgeo;
using io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;
constexpr int kBudgetError = 3;

struct Common {
    std::string input;
    std::string output;
    double tolerance = 1e-9;
    std::string format = "rational";
    std::size_t depth = 0; // 0: global budget
};

std::size_t effective_budget(const Common& c) {
    std::size_t global = depth_budget();
    if (c.depth == 0) return global;
    if (c.depth > global) {
        throw BudgetError("requested depth " + std::to_string(c.depth) + " exceeds the global budget " +
                          std::to_string(global));
    }
    return c.depth;
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
    } else {
        io::write_text_file(c.output, text);
    }
}

void emit_json(const Common& c, const Json& j) { emit(c, j.dump(2) + "\n"); }

Bush load_bush(const Common& c) {
    if (c.input.empty()) throw InputError("--input bush file is required");
    return io::bush_from(io::read_json_file(c.input));
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(static_cast<std::size_t>(std::stoul(item)));
        } catch (...) {
            throw InputError("bad index '" + item + "'");
        }
    }
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thick families of geodesics built from epsilon-bushes"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input) sub->add_option("-i,--input", common.input, "bush file (JSON)");
        sub->add_option("-o,--output", common.output, "output file (default: stdout)");
        sub->add_option("--tol", common.tolerance, "tolerance for norm comparisons")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", common.format, "number format")->check(CLI::IsMember({"rational", "decimal"}));
        sub->add_option("--depth", common.depth, "depth budget (<= THICKGEO_DEPTH_BUDGET, default 12)");
    };

    // bush-gen
    auto* gen = app.add_subcommand("bush-gen", "generate a canonical bush");
    std::optional<std::size_t> dyadic_n, rademacher_n, split_n;
    std::uint64_t seed = 1;
    std::size_t max_children = 3;
    gen->add_option("--dyadic", dyadic_n, "dyadic step-function bush of depth N (weighted l1)");
    gen->add_option("--rademacher", rademacher_n, "martingale bush of depth N (l-infinity)");
    gen->add_option("--split", split_n, "random support-splitting bush of depth N (weighted l1)");
    gen->add_option("--seed", seed, "seed for --split");
    gen->add_option("--max-children", max_children, "block size limit for --split");
    add_common(gen, false);

    // bush-validate
    auto* val = app.add_subcommand("bush-validate", "check the bush axioms and derived bounds");
    bool raw = false;
    val->add_flag("--raw", raw, "raw bush: skip unit-norm and functional checks");
    add_common(val);

    // line-build
    auto* line = app.add_subcommand("line-build", "build the broken line for a label");
    std::string label_text;
    bool intermediate = false;
    bool export_flag = false;
    line->add_option("--label", label_text, "bit string, '-' or '' for the root");
    line->add_flag("--intermediate", intermediate, "build the intermediate (refined) line instead");
    line->add_flag("--export", export_flag, "write the vertex table instead of the JSON summary");
    add_common(line);

    // deviation-report
    auto* dev = app.add_subcommand("deviation-report", "deviation between the two children of a label");
    std::string gaps_text;
    bool gaps_given = false;
    dev->add_option("--label", label_text, "bit string, '-' or '' for the root");
    dev->add_option("--gaps", gaps_text, "comma-separated gap indices (default: all)")
        ->each([&](const std::string&) { gaps_given = true; });
    add_common(dev);

    // challenge
    auto* chal = app.add_subcommand("challenge", "answer a thickness challenge");
    std::string challenge_path;
    chal->add_option("--challenge", challenge_path, "challenge file (JSON)")->required();
    add_common(chal);

    // witness-validate
    auto* wit = app.add_subcommand("witness-validate", "check a witness against the thickness conditions");
    std::string response_path;
    std::string alpha_text = "1/4";
    wit->add_option("--challenge", challenge_path, "challenge file (JSON)")->required();
    wit->add_option("--response", response_path, "response file produced by 'challenge'")->required();
    wit->add_option("--alpha", alpha_text, "required deviation sum (default 1/4)");
    add_common(wit);

    // alpha-bruteforce
    auto* alpha = app.add_subcommand("alpha-bruteforce", "exhaustive grid-restricted thickness bound");
    std::size_t family_depth = 1, n_max = 1, grid_depth = 1;
    alpha->add_option("--family-depth", family_depth, "use all lines with labels of this length");
    alpha->add_option("--n-max", n_max, "largest challenge size");
    alpha->add_option("--grid-depth", grid_depth, "challenge points: vertex arclengths at this depth");
    add_common(alpha);

    // gauge-eval
    auto* gauge = app.add_subcommand("gauge-eval", "gauge of conv(B_X ∪ ±bush vectors)");
    std::vector<std::string> vectors_text;
    gauge->add_option("--vector", vectors_text, "comma-separated coordinates (repeatable); default: all bush vectors");
    add_common(gauge);

    // export
    auto* exp = app.add_subcommand("export", "vertex table of a line or a pasted geodesic");
    std::string geodesic_path;
    exp->add_option("--label", label_text, "bit string of a broken line");
    exp->add_option("--geodesic", geodesic_path,
                    "challenge/response/geodesic JSON; exports the pasted geodesic (g~ for responses)");
    add_common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        const auto fmt = io::parse_number_format(common.format);

        if (gen->parsed()) {
            int chosen = (dyadic_n ? 1 : 0) + (rademacher_n ? 1 : 0) + (split_n ? 1 : 0);
            if (chosen != 1) throw InputError("choose exactly one of --dyadic, --rademacher, --split");
            std::size_t budget = effective_budget(common);
            Bush b = dyadic_n       ? dyadic_bush(*dyadic_n, budget)
                     : rademacher_n ? rademacher_bush(*rademacher_n, budget)
                                    : split_bush(SplitBushOptions{*split_n, max_children, 0, seed});
            emit_json(common, io::bush_to_json(b));
            return kPass;
        }

        if (val->parsed()) {
            Bush b = load_bush(common);
            auto report = validate_bush(b, common.tolerance, raw ? BushMode::raw : BushMode::normalized);
            emit_json(common, io::bush_report_to_json(report));
            return report.passed() ? kPass : kFail;
        }

        if (line->parsed()) {
            LineCache cache(load_bush(common));
            Label label = Label::parse(label_text);
            effective_budget(common);
            auto bl = intermediate ? cache.intermediate(label) : cache.line(label);
            auto verts = intermediate ? cache.intermediate_vertices(label) : cache.vertices(label);
            const Bush& b = cache.bush();
            Json j;
            j["label"] = label.display();
            j["intermediate"] = intermediate;
            j["terms"] = bl->terms.size();
            j["vertices"] = verts->size();
            j["length"] = io::format_number(bl->length(), fmt);
            j["max_gap"] = io::format_number(max_gap(*bl), fmt);
            j["gap_bound"] = io::format_number(pow(cache.lambda_max(), label.size()), fmt);
            j["ends_at_root_vector"] = verts->points.back() == b.root();
            std::string table = io::vertex_table(
                *verts, "label=" + label.display() + " intermediate=" + (intermediate ? "true" : "false"), fmt);
            emit(common, export_flag ? table : j.dump(2) + "\n");
            return kPass;
        }

        if (dev->parsed()) {
            LineCache cache(load_bush(common));
            std::optional<std::vector<std::size_t>> selection;
            if (gaps_given) selection = parse_index_list(gaps_text);
            auto report = sibling_deviation(cache, Label::parse(label_text), selection);
            emit_json(common, io::deviation_report_to_json(report, fmt));
            return report.meets_bound() ? kPass : kFail;
        }

        if (chal->parsed()) {
            LineCache cache(load_bush(common));
            auto c = io::challenge_from(io::read_json_file(challenge_path));
            PastedGeodesic g = paste(cache, c.geodesic.breakpoints, c.geodesic.pieces);
            auto response = challenge_respond(cache, g, c.t, effective_budget(common));
            emit_json(common, io::response_to_json(response));
            return kPass;
        }

        if (wit->parsed()) {
            LineCache cache(load_bush(common));
            auto c = io::challenge_from(io::read_json_file(challenge_path));
            Json resp = io::read_json_file(response_path);
            PastedGeodesic g = paste(cache, c.geodesic.breakpoints, c.geodesic.pieces);
            PastedGeodesic gt = io::geodesic_from(resp.at("geodesic_tilde"));
            gt = paste(cache, gt.breakpoints, gt.pieces);
            auto w = io::witness_from(resp.at("witness"));
            auto report = validate_witness(cache, g, gt, c.t, w, parse_rational(alpha_text), common.tolerance);
            emit_json(common, io::witness_report_to_json(report));
            return report.passed() ? kPass : kFail;
        }

        if (alpha->parsed()) {
            LineCache cache(load_bush(common));
            std::size_t budget = effective_budget(common);
            if (family_depth > budget || grid_depth > budget) throw BudgetError("depth exceeds the budget");
            auto family = truncated_family(cache, family_depth);
            auto grid = vertex_grid(cache, grid_depth);
            auto report = brute_force_alpha(cache, family, n_max, grid);
            emit_json(common, io::alpha_report_to_json(report));
            return kPass;
        }

        if (gauge->parsed()) {
            Bush b = load_bush(common);
            auto gens = b.all_vectors();
            std::vector<Vector> targets;
            if (vectors_text.empty()) {
                targets = gens;
            } else {
                for (const auto& t : vectors_text) {
                    auto coords = parse_rational_list(t);
                    if (coords.size() != b.space.dimension()) throw InputError("vector '" + t + "' has wrong dimension");
                    targets.push_back(Vector::from_dense(coords));
                }
            }
            Json results = Json::array();
            for (const auto& v : targets) {
                auto r = gauge_renorm_detailed(b.space, gens, v);
                Json e;
                e["vector"] = io::vector_to_json(v);
                e["gauge"] = r.exact ? io::format_number(*r.exact, fmt) : to_decimal(Rational(r.value));
                e["base_norm"] = norm(b.space, v);
                e["functional"] = io::format_number(b.functional(v), fmt);
                if (!r.exact) e["bracket"] = Json::array({r.lower, r.upper});
                results.push_back(e);
            }
            emit_json(common, Json{{"norm", std::string(to_string(b.space.kind()))}, {"results", results}});
            return kPass;
        }

        if (exp->parsed()) {
            LineCache cache(load_bush(common));
            if (!geodesic_path.empty()) {
                Json j = io::read_json_file(geodesic_path);
                const Json& desc = j.contains("geodesic_tilde") ? j.at("geodesic_tilde")
                                   : j.contains("geodesic")     ? j.at("geodesic")
                                                                : j;
                PastedGeodesic g = io::geodesic_from(desc);
                g = paste(cache, g.breakpoints, g.pieces);
                emit(common, io::vertex_table(pasted_vertices(cache, g), "geodesic=" + desc.dump(), fmt));
            } else {
                Label label = Label::parse(label_text);
                emit(common, io::vertex_table(*cache.vertices(label),
                                              "label=" + label.display() + " intermediate=false", fmt));
            }
            return kPass;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kBudgetError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kBudgetError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kPass;
}
