#include "colorloss/cli.h"

#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "colorloss/scaling.h"

namespace colorloss {

void RunConfig::validate() const {
    const Geometry g = parse_geometry(geometry);
    const Variant v = parse_variant(variant);
    if (command != "fit" && input.empty()) {
        if (distances.empty()) throw ValidationError("no distance given");
        for (int d : distances) check_distance(g, v, d);
    }
    parse_method(method);
    if (colors.empty()) throw ValidationError("no color given");
    for (const auto& c : colors) parse_color(c);
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (threads < 1 || threads > 1024) throw ValidationError("threads must be between 1 and 1024");
    parse_twin_redraw(twin_redraw);
    if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("grid rate " + format_double(p) + " outside [0, 1]");
    }
    if (command == "sweep") {
        if (p_grid.empty()) throw ValidationError("sweep needs a rate grid (--p-grid)");
        if (distances.size() != 1 || colors.size() != 1) throw ValidationError("sweep takes one distance and one color");
    }
    if (command == "fit" && input.empty()) throw ValidationError("fit needs an input CSV");
    if (inv_nu < 0.0 || !std::isfinite(inv_nu)) throw ValidationError("inv-nu must be positive");
}

Json RunConfig::to_json() const {
    Json j;
    j["command"] = command;
    if (command == "fit") {
        j["input"] = input;
        j["inv_nu"] = inv_nu;
        j["weighted"] = weighted;
        return j;
    }
    j["geometry"] = geometry;
    j["variant"] = variant;
    if (command == "lattice" && !input.empty()) {
        j["input"] = input;
        return j;
    }
    j["distances"] = distances;
    if (command == "lattice") return j;
    j["method"] = method;
    j["colors"] = colors;
    j["trials"] = trials;
    j["seed"] = seed;
    if (command == "threshold") j["twin_redraw"] = twin_redraw;
    if (command == "sweep") j["p_grid"] = p_grid;
    j["format"] = format;
    return j;
}

void RunConfig::merge(const Json& doc) {
    if (!doc.is_object()) throw ValidationError("config: document is not an object");
    try {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const std::string& k = it.key();
            const Json& v = it.value();
            if (k == "command") {
                if (v.get<std::string>() != command)
                    throw ValidationError("config: written for '" + v.get<std::string>() + "', not '" + command + "'");
            } else if (k == "geometry") {
                geometry = v.get<std::string>();
            } else if (k == "variant") {
                variant = v.get<std::string>();
            } else if (k == "distances" || k == "distance") {
                distances = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
            } else if (k == "method") {
                method = v.get<std::string>();
            } else if (k == "colors" || k == "color") {
                colors = v.is_array() ? v.get<std::vector<std::string>>() : std::vector<std::string>{v.get<std::string>()};
            } else if (k == "trials") {
                trials = v.get<int>();
            } else if (k == "seed") {
                seed = v.get<std::uint64_t>();
            } else if (k == "threads") {
                threads = v.get<int>();
            } else if (k == "twin_redraw" || k == "twin-redraw") {
                twin_redraw = v.get<std::string>();
            } else if (k == "output") {
                output = v.get<std::string>();
            } else if (k == "format") {
                format = v.get<std::string>();
            } else if (k == "summary") {
                summary = v.get<std::string>();
            } else if (k == "p_grid" || k == "p-grid") {
                p_grid = v.get<std::vector<double>>();
            } else if (k == "input") {
                input = v.get<std::string>();
            } else if (k == "inv_nu" || k == "inv-nu") {
                inv_nu = v.get<double>();
            } else if (k == "weighted") {
                weighted = v.get<bool>();
            } else if (k == "quiet") {
                quiet = v.get<bool>();
            } else {
                throw ValidationError("config: unknown key '" + k + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

namespace {

std::vector<std::string> metadata(const RunConfig& cfg) {
    return {std::string("colorloss ") + kVersion, "config " + cfg.to_json().dump()};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output == "-") {
        out << text;
        out.flush();
    } else {
        write_text_file(cfg.output, text);
    }
}

ProgressFn progress_printer(std::ostream& err, const std::string& label, bool quiet) {
    if (quiet) return {};
    auto last = std::make_shared<int>(-1);
    return [&err, label, last](int done, int total) {
        const int tenth = done * 10 / total;
        if (tenth == *last) return;
        *last = tenth;
        err << label << ' ' << done << '/' << total << '\n';
    };
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ColorLattice lat;
    if (!cfg.input.empty()) {
        lat = lattice_from_json(parse_json(read_text_file(cfg.input), cfg.input));
    } else {
        lat = build_lattice(parse_geometry(cfg.geometry), parse_variant(cfg.variant), cfg.distances.front());
    }
    ValidationReport rep = validate(lat);
    if (!rep.ok()) {
        err << "error: lattice fails validation: " << rep.summary() << '\n';
        return kExitValidation;
    }
    emit(cfg, lattice_json_text(lattice_to_json(lat)), out);
    return kExitOk;
}

int cmd_threshold(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Geometry g = parse_geometry(cfg.geometry);
    const Variant v = parse_variant(cfg.variant);
    const Method m = parse_method(cfg.method);
    RunOptions opts;
    opts.threads = cfg.threads;
    opts.trial.twin_redraw = parse_twin_redraw(cfg.twin_redraw);
    std::vector<ThresholdDistribution> runs;
    for (int d : cfg.distances) {
        ColorLattice lat = build_lattice(g, v, d);
        for (const auto& cs : cfg.colors) {
            const Color c = parse_color(cs);
            opts.progress = progress_printer(err, "threshold d=" + std::to_string(d) + " color=" + cs, cfg.quiet);
            runs.push_back(run_trials(lat, m, c, cfg.trials, derive_seed(cfg.seed, d, idx(c)), opts));
        }
    }
    Json summary = threshold_summary(runs);
    Json doc;
    doc["version"] = kVersion;
    doc["config"] = cfg.to_json();
    doc["summary"] = summary;
    if (cfg.format == "json") {
        emit(cfg, doc.dump(2) + "\n", out);
    } else {
        std::ostringstream ss;
        write_threshold_csv(ss, runs, metadata(cfg));
        emit(cfg, ss.str(), out);
    }
    if (!cfg.summary.empty()) write_text_file(cfg.summary, doc.dump(2) + "\n");
    for (const auto& r : runs) {
        if (!cfg.quiet && r.monotonicity_violations > 0)
            err << "note: d=" << r.distance << " color=" << color_char(r.color) << ": " << r.monotonicity_violations
                << " bisection rounds disagreed with an earlier round\n";
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ColorLattice lat = build_lattice(parse_geometry(cfg.geometry), parse_variant(cfg.variant), cfg.distances.front());
    RunOptions opts;
    opts.threads = cfg.threads;
    opts.progress = progress_printer(err, "sweep", cfg.quiet);
    auto points = sweep_probability(lat, parse_method(cfg.method), parse_color(cfg.colors.front()), cfg.p_grid,
                                    cfg.trials, cfg.seed, opts);
    if (cfg.format == "json") {
        Json doc;
        doc["version"] = kVersion;
        doc["config"] = cfg.to_json();
        Json pts = Json::array();
        for (const auto& p : points) {
            pts.push_back({{"p", p.p}, {"survival", p.survival}, {"err", p.err}, {"trials", p.trials}});
        }
        doc["points"] = std::move(pts);
        emit(cfg, doc.dump(2) + "\n", out);
    } else {
        std::ostringstream ss;
        write_sweep_csv(ss, points, metadata(cfg));
        emit(cfg, ss.str(), out);
    }
    return kExitOk;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::vector<ThresholdRow> rows;
    if (cfg.input == "-") {
        rows = read_threshold_csv(std::cin);
    } else {
        std::istringstream in(read_text_file(cfg.input));
        rows = read_threshold_csv(in);
    }
    if (rows.empty()) throw ValidationError(cfg.input + ": no data rows");
    struct Acc {
        std::vector<double> p, f;
    };
    using Key = std::tuple<std::string, std::string, std::string, std::string>;
    std::map<Key, std::map<int, Acc>> groups;
    for (const auto& r : rows) {
        auto& a = groups[{r.geometry, r.variant, r.method, r.color}][r.distance];
        a.p.push_back(r.p_critical);
        a.f.push_back(r.fraction_remaining);
    }
    auto mean_std = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m += x;
        m /= v.size();
        double ss = 0;
        for (double x : v) ss += (x - m) * (x - m);
        return std::pair<double, double>{m, v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0};
    };
    Json results = Json::array();
    for (const auto& [key, by_d] : groups) {
        const auto& [geometry, variant, method, color] = key;
        const double inv_nu = cfg.inv_nu > 0 ? cfg.inv_nu : (parse_method(method) == Method::Algebraic ? 1.0 : 0.75);
        std::vector<ScalingPoint> pc, delta, frac;
        Json pts = Json::array();
        for (const auto& [d, acc] : by_d) {
            auto [pm, ps] = mean_std(acc.p);
            auto [fm, fs] = mean_std(acc.f);
            const double n = static_cast<double>(acc.p.size());
            ScalingPoint sp{double(d), pm, {}};
            if (cfg.weighted) sp.sigma = ps / std::sqrt(n);
            pc.push_back(sp);
            delta.push_back({double(d), ps, {}});
            frac.push_back({double(d), fm, cfg.weighted ? std::optional<double>(fs / std::sqrt(n)) : std::nullopt});
            pts.push_back({{"d", d}, {"mean", pm}, {"std", ps}, {"trials", acc.p.size()}, {"fraction_mean", fm}});
        }
        ScalingFit fit = fit_threshold(pc, inv_nu);
        Json j;
        j["p_inf"] = fit.p_inf;
        j["p_inf_err"] = fit.p_inf_err;
        j["b"] = fit.b;
        j["inv_nu"] = fit.inv_nu;
        j["chi2"] = fit.chi2;
        j["n_points"] = fit.n_points;
        j["geometry"] = geometry;
        j["variant"] = variant;
        j["method"] = method;
        j["color"] = color;
        j["weighted"] = fit.weighted;
        j["residuals"] = fit.residuals;
        bool positive = true;
        for (const auto& p : delta) positive &= p.value > 0;
        if (positive) {
            ExponentFit ef = fit_exponent(delta);
            j["exponent"] = {{"inv_nu", ef.inv_nu}, {"inv_nu_err", ef.inv_nu_err}};
        }
        FractionFit ff = fit_fraction(frac);
        j["fraction"] = {{"fraction_inf", ff.fraction_inf}, {"fraction_inf_err", ff.fraction_inf_err}};
        j["points"] = std::move(pts);
        results.push_back(std::move(j));
    }
    Json doc = results.size() == 1 ? results[0] : results;
    emit(cfg, doc.dump(2) + "\n", out);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qubit-loss reconstruction and threshold estimation for 2D color codes", "colorloss"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    RunConfig cfg;
    std::string config_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config; its keys override flags");
        sub->add_option("--geometry", cfg.geometry, "4.8.8 or 6.6.6");
        sub->add_option("--variant", cfg.variant, "square or triangular");
        sub->add_option("--output,-o", cfg.output, "output path, - for standard output");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_flag("--quiet,-q", cfg.quiet, "no progress on standard error");
    };
    auto run_opts = [&](CLI::App* sub) {
        sub->add_option("--method", cfg.method, "string, branching or algebraic (I, II, III)");
        sub->add_option("--trials", cfg.trials, "trials per distance (or per grid point)");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--twin-redraw", cfg.twin_redraw, "per-round or frozen");
    };

    CLI::App* lat = app.add_subcommand("lattice", "build, validate and export a lattice as JSON");
    common(lat);
    lat->add_option("--distance,--distances", cfg.distances, "code distance")->delimiter(',')->expected(1);
    lat->add_option("--input", cfg.input, "lattice JSON to import instead of building");

    CLI::App* thr = app.add_subcommand("threshold", "critical loss rate per trial, CSV samples and JSON summary");
    common(thr);
    run_opts(thr);
    thr->add_option("--distances,--distance", cfg.distances, "distance list, e.g. 8,12,16")->delimiter(',');
    thr->add_option("--color,--colors", cfg.colors, "color list, e.g. R,G,B")->delimiter(',');
    thr->add_option("--summary", cfg.summary, "also write the JSON summary here");

    CLI::App* sw = app.add_subcommand("sweep", "survival probability on a grid of loss rates");
    common(sw);
    run_opts(sw);
    sw->add_option("--distance,--distances", cfg.distances, "code distance")->delimiter(',');
    sw->add_option("--color", cfg.colors, "color")->delimiter(',');
    sw->add_option("--p-grid", cfg.p_grid, "loss rates, e.g. 0,0.1,0.2")->delimiter(',');

    CLI::App* fit = app.add_subcommand("fit", "finite-size scaling fit of a threshold CSV");
    fit->add_option("--config", config_path, "JSON config; its keys override flags");
    fit->add_option("input,--input", cfg.input, "threshold CSV, - for standard input");
    fit->add_option("--inv-nu", cfg.inv_nu, "fixed exponent 1/nu (default 1 for algebraic, 0.75 otherwise)");
    fit->add_flag("--weighted", cfg.weighted, "weight points by std/sqrt(trials)");
    fit->add_option("--output,-o", cfg.output, "output path, - for standard output");
    fit->add_flag("--quiet,-q", cfg.quiet, "no progress on standard error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (CLI::App* sub : {lat, thr, sw, fit}) {
            if (sub->parsed()) cfg.command = sub->get_name();
        }
        if (!config_path.empty()) cfg.merge(parse_json(read_text_file(config_path), config_path));
        cfg.validate();
        if (cfg.command == "lattice") return cmd_lattice(cfg, out, err);
        if (cfg.command == "threshold") return cmd_threshold(cfg, out, err);
        if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
        return cmd_fit(cfg, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace colorloss
