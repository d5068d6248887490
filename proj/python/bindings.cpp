#include <algorithm>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "colorloss/io.h"
#include "colorloss/lattice.h"
#include "colorloss/logical_checks.h"
#include "colorloss/montecarlo.h"
#include "colorloss/reconstruction.h"
#include "colorloss/scaling.h"

namespace py = pybind11;
using namespace colorloss;

namespace {

std::string color_name(Color c) { return std::string(1, color_char(c)); }

py::dict record_dict(const ReconstructionRecord& rec) {
    py::dict d;
    d["losses"] = rec.losses.lost;
    py::list dimers;
    for (const Dimer& x : rec.dimers) {
        if (x.q1 < 0) {
            dimers.append(py::make_tuple(x.q0, py::none(), py::none()));
        } else {
            dimers.append(py::make_tuple(x.q0, x.q1, color_name(x.color)));
        }
    }
    d["dimers"] = dimers;
    d["skipped"] = rec.skipped;
    d["mask"] = rec.mask;
    d["masked"] = rec.masked;
    d["remaining_fraction"] = rec.remaining_fraction;
    return d;
}

py::dict distribution_dict(const ThresholdDistribution& dist) {
    py::dict d;
    d["distance"] = dist.distance;
    d["method"] = to_string(dist.method);
    d["color"] = color_name(dist.color);
    d["mean"] = dist.mean;
    d["std"] = dist.stddev;
    d["p_critical"] = dist.samples();
    std::vector<double> fractions;
    std::vector<std::uint64_t> seeds;
    for (const auto& t : dist.trials) {
        fractions.push_back(t.fraction_remaining);
        seeds.push_back(t.seed);
    }
    d["fraction_remaining"] = fractions;
    d["seeds"] = seeds;
    d["monotonicity_violations"] = dist.monotonicity_violations;
    return d;
}

std::vector<ScalingPoint> points(const std::vector<double>& d, const std::vector<double>& v,
                                 const std::optional<std::vector<double>>& sigma) {
    if (d.size() != v.size() || (sigma && sigma->size() != d.size()))
        throw ValidationError("distances, values and sigmas must have equal lengths");
    std::vector<ScalingPoint> out;
    for (size_t i = 0; i < d.size(); i++) {
        out.push_back({d[i], v[i], sigma ? std::optional<double>((*sigma)[i]) : std::nullopt});
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Qubit-loss reconstruction and threshold estimation for 2D color codes";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

    py::class_<ColorLattice>(m, "Lattice")
        .def_property_readonly("geometry", [](const ColorLattice& l) { return to_string(l.geometry); })
        .def_property_readonly("variant", [](const ColorLattice& l) { return to_string(l.variant); })
        .def_readonly("distance", &ColorLattice::distance)
        .def_readonly("num_qubits", &ColorLattice::num_qubits)
        .def_readonly("k", &ColorLattice::num_logical)
        .def_property_readonly("num_plaquettes", &ColorLattice::num_plaquettes)
        .def_property_readonly("edges",
                               [](const ColorLattice& l) {
                                   py::list out;
                                   for (const Edge& e : l.edges) out.append(py::make_tuple(e.a, e.b, color_name(e.color)));
                                   return out;
                               })
        .def_property_readonly("plaquettes",
                               [](const ColorLattice& l) {
                                   py::list out;
                                   for (const Plaquette& p : l.plaquettes)
                                       out.append(py::make_tuple(color_name(p.color), p.qubits));
                                   return out;
                               })
        .def("euler_characteristic", [](const ColorLattice& l) { return euler_characteristic(l); })
        .def("logical_qubit_count", [](const ColorLattice& l) { return logical_qubit_count(l); })
        .def("validate",
             [](const ColorLattice& l) {
                 std::vector<std::pair<std::string, std::vector<int>>> out;
                 for (const auto& v : validate(l).violations) out.emplace_back(v.kind, v.items);
                 return out;
             },
             "List of (kind, items) violations, empty when valid.")
        .def("to_json", [](const ColorLattice& l) { return lattice_json_text(lattice_to_json(l)); })
        .def("__repr__", [](const ColorLattice& l) {
            return "<Lattice " + to_string(l.geometry) + " " + to_string(l.variant) + " d=" + std::to_string(l.distance) +
                   " n=" + std::to_string(l.num_qubits) + ">";
        });

    m.def(
        "build_lattice",
        [](const std::string& g, const std::string& v, int d) { return build_lattice(parse_geometry(g), parse_variant(v), d); },
        py::arg("geometry"), py::arg("variant"), py::arg("distance"));
    m.def(
        "lattice_from_json", [](const std::string& text) { return lattice_from_json(parse_json(text, "lattice")); },
        py::arg("text"));

    m.def("derive_seed", py::overload_cast<uint64_t, uint64_t>(&derive_seed), py::arg("master"), py::arg("index"));

    m.def(
        "sample_losses",
        [](const ColorLattice& l, double p, uint64_t seed) {
            Rng rng(seed);
            return sample_losses(l, p, rng).lost;
        },
        py::arg("lattice"), py::arg("p"), py::arg("seed"));

    m.def(
        "reconstruct",
        [](const ColorLattice& l, std::vector<Qubit> lost, uint64_t seed) {
            for (Qubit q : lost) {
                if (q < 0 || q >= l.num_qubits) throw ValidationError("lost qubit " + std::to_string(q) + " out of range");
            }
            std::sort(lost.begin(), lost.end());
            lost.erase(std::unique(lost.begin(), lost.end()), lost.end());
            Rng rng(seed);
            return record_dict(reconstruct(l, {lost, -1.0}, rng));
        },
        py::arg("lattice"), py::arg("lost"), py::arg("seed") = 0,
        "Reconstructs the code after the given losses; twins drawn from seed.");

    m.def(
        "survives",
        [](const ColorLattice& l, const std::vector<uint8_t>& mask, const std::string& method, const std::string& color) {
            if (static_cast<int>(mask.size()) != l.num_qubits) throw ValidationError("mask length must equal num_qubits");
            const Color c = parse_color(color);
            if (logical_index_of(l, c) < 0) throw ValidationError("no logical path of color " + color);
            return survives(l, mask, parse_method(method), c);
        },
        py::arg("lattice"), py::arg("mask"), py::arg("method"), py::arg("color"));

    m.def(
        "sample_critical_rate",
        [](const ColorLattice& l, const std::string& method, const std::string& color, uint64_t seed,
           const std::string& twin_redraw) {
            Rng rng(seed);
            TrialOptions opt;
            opt.twin_redraw = parse_twin_redraw(twin_redraw);
            auto r = sample_critical_rate(l, parse_method(method), parse_color(color), rng, opt);
            py::dict d;
            d["p_critical"] = r.p_critical;
            d["fraction_remaining"] = r.fraction_remaining;
            d["lost"] = r.lost;
            d["rounds"] = r.rounds;
            return d;
        },
        py::arg("lattice"), py::arg("method"), py::arg("color"), py::arg("seed"), py::arg("twin_redraw") = "per-round");

    m.def(
        "run_trials",
        [](const ColorLattice& l, const std::string& method, const std::string& color, int trials, uint64_t seed,
           int threads, const std::string& twin_redraw) {
            RunOptions opt;
            opt.threads = threads;
            opt.trial.twin_redraw = parse_twin_redraw(twin_redraw);
            ThresholdDistribution dist;
            {
                py::gil_scoped_release release;
                dist = run_trials(l, parse_method(method), parse_color(color), trials, seed, opt);
            }
            return distribution_dict(dist);
        },
        py::arg("lattice"), py::arg("method"), py::arg("color"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1, py::arg("twin_redraw") = "per-round");

    m.def(
        "sweep",
        [](const ColorLattice& l, const std::string& method, const std::string& color, const std::vector<double>& grid,
           int trials, uint64_t seed, int threads) {
            RunOptions opt;
            opt.threads = threads;
            std::vector<SweepPoint> pts;
            {
                py::gil_scoped_release release;
                pts = sweep_probability(l, parse_method(method), parse_color(color), grid, trials, seed, opt);
            }
            py::list out;
            for (const auto& p : pts) {
                py::dict d;
                d["p"] = p.p;
                d["survival"] = p.survival;
                d["err"] = p.err;
                d["trials"] = p.trials;
                out.append(d);
            }
            return out;
        },
        py::arg("lattice"), py::arg("method"), py::arg("color"), py::arg("grid"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1);

    m.def(
        "fit_threshold",
        [](const std::vector<double>& d, const std::vector<double>& pc, double inv_nu,
           const std::optional<std::vector<double>>& sigma) {
            auto f = fit_threshold(points(d, pc, sigma), inv_nu);
            py::dict out;
            out["p_inf"] = f.p_inf;
            out["p_inf_err"] = f.p_inf_err;
            out["b"] = f.b;
            out["b_err"] = f.b_err;
            out["chi2"] = f.chi2;
            out["residuals"] = f.residuals;
            return out;
        },
        py::arg("distances"), py::arg("p_c"), py::arg("inv_nu") = 1.0, py::arg("sigma") = py::none());

    m.def(
        "fit_exponent",
        [](const std::vector<double>& d, const std::vector<double>& delta) {
            auto f = fit_exponent(points(d, delta, std::nullopt));
            py::dict out;
            out["inv_nu"] = f.inv_nu;
            out["inv_nu_err"] = f.inv_nu_err;
            out["amplitude"] = f.amplitude;
            return out;
        },
        py::arg("distances"), py::arg("delta"));

    m.def(
        "fit_fraction",
        [](const std::vector<double>& d, const std::vector<double>& fraction) {
            auto f = fit_fraction(points(d, fraction, std::nullopt));
            py::dict out;
            out["fraction_inf"] = f.fraction_inf;
            out["fraction_inf_err"] = f.fraction_inf_err;
            out["slope"] = f.slope;
            return out;
        },
        py::arg("distances"), py::arg("fraction"));
}
