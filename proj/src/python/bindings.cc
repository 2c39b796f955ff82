// Copyright 2026 The immrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "immrate/analysis.h"
#include "immrate/delays.h"
#include "immrate/errors.h"
#include "immrate/interferometer.h"
#include "immrate/matfun.h"
#include "immrate/rates.h"
#include "immrate/sampling.h"

namespace py = pybind11;
using namespace immrate;

namespace {

Partition to_partition(const std::vector<int> &parts) {
    return Partition(parts);
}

std::optional<Partition> to_optional_partition(const std::optional<std::vector<int>> &parts) {
    if (!parts) {
        return std::nullopt;
    }
    return Partition(*parts);
}

DelayMatrix to_delay(const RealMatrix &r) {
    return DelayMatrix(r);
}

}  // namespace

PYBIND11_MODULE(_immrate, m) {
    m.doc() = "Coincidence rates of partially distinguishable bosons and fermions.";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("determinant", [](const ComplexMatrix &a) { return determinant(a); }, py::arg("a"));
    m.def("permanent", [](const ComplexMatrix &a) { return permanent(a); }, py::arg("a"));
    m.def(
        "immanant", [](const std::vector<int> &shape, const ComplexMatrix &a) { return immanant(to_partition(shape), a); },
        py::arg("shape"), py::arg("a"));

    m.def(
        "partitions_of",
        [](int n) {
            std::vector<std::vector<int>> out;
            for (const auto &p : partitions_of(n)) out.push_back(p.parts());
            return out;
        },
        py::arg("n"), "Partitions of n in reverse-lexicographic order.");
    m.def(
        "dominates",
        [](const std::vector<int> &lambda, const std::vector<int> &mu) {
            return dominates(to_partition(lambda), to_partition(mu));
        },
        py::arg("lam"), py::arg("mu"));
    m.def(
        "gamas_vanishes",
        [](const std::vector<int> &lambda, const std::vector<int> &mu) {
            return gamas_vanishes(to_partition(lambda), to_partition(mu));
        },
        py::arg("lam"), py::arg("mu"));
    m.def(
        "standard_tableau_count", [](const std::vector<int> &shape) { return standard_tableau_count(to_partition(shape)); },
        py::arg("shape"));

    m.def(
        "haar_unitary", [](int modes, uint64_t seed) { return haar_unitary(modes, seed).unitary(); }, py::arg("m"),
        py::arg("seed"));
    m.def(
        "submatrix",
        [](const ComplexMatrix &u, const std::string &s, int n) {
            return submatrix(Interferometer(u), OutputString::parse(s), n);
        },
        py::arg("u"), py::arg("s"), py::arg("n"));
    m.def(
        "delay_matrix",
        [](const std::vector<double> &taus, double delta_omega) { return delay_matrix(taus, delta_omega).matrix(); },
        py::arg("taus"), py::arg("delta_omega") = 1.0);

    m.def(
        "rate",
        [](const ComplexMatrix &a, const RealMatrix &r, const std::string &species, const std::string &engine,
           const std::optional<std::vector<int>> &mu) {
            return compute_rate(a, to_delay(r), parse_species(species), parse_engine(engine),
                                to_optional_partition(mu));
        },
        py::arg("a"), py::arg("r"), py::arg("species") = "boson", py::arg("engine") = "blocked",
        py::arg("mu") = py::none(), "Unnormalised coincidence rate for the n x n submatrix a and delay matrix r.");
    m.def(
        "rate_fully_distinguishable", [](const ComplexMatrix &a) { return rate_fully_distinguishable(a); },
        py::arg("a"));
    m.def(
        "blocks",
        [](const ComplexMatrix &a, const RealMatrix &r, const std::string &species) {
            py::list out;
            for (const auto &t : decompose(a, to_delay(r), parse_species(species)).terms) {
                py::dict d;
                d["vector"] = t.vector_label.parts();
                d["block"] = t.block_label.parts();
                d["matrix"] = t.block;
                d["vectors"] = t.vectors;
                d["contribution"] = t.contribution();
                out.append(d);
            }
            return out;
        },
        py::arg("a"), py::arg("r"), py::arg("species") = "boson");

    m.def(
        "distribution",
        [](const ComplexMatrix &u, int n, const RealMatrix &r, const std::string &species, const std::string &engine) {
            DistributionOptions opts;
            opts.engine = parse_engine(engine);
            auto d = build_distribution(Interferometer(u), n, to_delay(r), parse_species(species), opts);
            std::vector<std::tuple<std::string, double, double>> out;
            for (const auto &e : d.entries) out.emplace_back(e.s.to_string(), e.rate, e.probability);
            return out;
        },
        py::arg("u"), py::arg("n"), py::arg("r"), py::arg("species") = "boson", py::arg("engine") = "direct",
        "List of (string, rate, probability) over collision-free outputs.");
    m.def(
        "sample",
        [](const ComplexMatrix &u, int n, const RealMatrix &r, const std::string &species, size_t count,
           uint64_t seed) {
            auto d = build_distribution(Interferometer(u), n, to_delay(r), parse_species(species));
            std::vector<std::string> out;
            for (const auto &s : sample(d, count, seed)) out.push_back(s.to_string());
            return out;
        },
        py::arg("u"), py::arg("n"), py::arg("r"), py::arg("species") = "boson", py::arg("count") = 1,
        py::arg("seed") = 0);

    m.def("witness_partition", [](int n) { return witness_partition(n).parts(); }, py::arg("n"));
    m.def(
        "delay_partition_probability",
        [](const std::vector<int> &mu, int bins) {
            auto p = delay_partition_probability(to_partition(mu), bins);
            return py::make_tuple(py::int_(py::str(boost::multiprecision::numerator(p).str())),
                                  py::int_(py::str(boost::multiprecision::denominator(p).str())));
        },
        py::arg("mu"), py::arg("bins"), "Exact probability as a (numerator, denominator) pair.");
    m.def(
        "witness_probability",
        [](int n, int bins) {
            auto w = witness_probability(n, bins);
            py::dict d;
            d["exact"] = w.exact.convert_to<double>();
            d["exact_tail"] = w.exact_tail.convert_to<double>();
            d["asymptotic_tail"] = w.asymptotic_tail;
            d["tail_decays"] = w.tail_decays;
            return d;
        },
        py::arg("n"), py::arg("bins"));
}
