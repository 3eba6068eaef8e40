#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freetop/errors.hpp"
#include "freetop/report.hpp"
#include "freetop/suites.hpp"

namespace py = pybind11;
namespace ft = freetop;

namespace {

ft::ReducedWord word_from_str(const std::string& s) { return ft::parse_word(s); }

std::string json_str(const ft::Json& j) { return j.dump(); }

// Opaque element handle: keeps the C++ variant out of the python ABI.
struct PyElem {
  ft::GroupElem v;
};

}  // namespace

PYBIND11_MODULE(freetop, m) {
  m.doc() = "Exact neighborhood machinery for the free group F(N), quotient "
            "homomorphisms onto oracle-presented countable groups, and "
            "piecewise-projection groups.";

  py::register_exception<ft::Error>(m, "FreetopError");

  // ---- words
  py::class_<ft::ReducedWord>(m, "Word")
      .def(py::init(&word_from_str), py::arg("text") = "")
      .def("__str__", [](const ft::ReducedWord& w) { return ft::format_word(w); })
      .def("__repr__",
           [](const ft::ReducedWord& w) { return "Word('" + ft::format_word(w) + "')"; })
      .def("__len__", &ft::ReducedWord::length)
      .def("__eq__", [](const ft::ReducedWord& a, const ft::ReducedWord& b) { return a == b; })
      .def("__hash__", [](const ft::ReducedWord& w) { return ft::WordHash{}(w); })
      .def("__mul__", [](const ft::ReducedWord& a, const ft::ReducedWord& b) {
        return ft::multiply(a, b);
      })
      .def("inverse", [](const ft::ReducedWord& w) { return ft::invert(w); })
      .def("conjugate",
           [](const ft::ReducedWord& w, const ft::ReducedWord& g) {
             return ft::conjugate(w, g);
           },
           py::arg("g"))
      .def("cyclic_reduce",
           [](const ft::ReducedWord& w) {
             const auto d = ft::cyclic_reduce(w);
             return py::make_tuple(d.core, d.wing);
           })
      .def("index_sum", [](const ft::ReducedWord& w) { return ft::index_sum(w); })
      .def_static("generator", &ft::ReducedWord::generator, py::arg("index"),
                  py::arg("sign") = 1);

  m.def("reduce", &word_from_str, py::arg("text"), "parse and freely reduce");

  // ---- chain + phi
  py::class_<ft::IndexChain, std::shared_ptr<ft::IndexChain>>(m, "IndexChain")
      .def("id", &ft::IndexChain::id)
      .def("level", &ft::IndexChain::level, py::arg("m"))
      .def("level_member", &ft::IndexChain::level_member, py::arg("t"), py::arg("i"))
      .def("fiber_member", &ft::IndexChain::fiber_member, py::arg("t"), py::arg("i"));
  m.def("make_chain",
        [](const std::string& id) {
          return std::const_pointer_cast<ft::IndexChain>(ft::make_chain(id));
        },
        py::arg("id") = "dyadic");

  py::class_<ft::PhiContext>(m, "PhiContext")
      .def(py::init([](const std::string& chain) {
             return new ft::PhiContext(ft::make_chain(chain));
           }),
           py::arg("chain") = "dyadic")
      .def("phi", &ft::PhiContext::phi, py::arg("n"), py::arg("word"))
      .def("phi_threshold", &ft::PhiContext::phi_threshold, py::arg("n"), py::arg("g"),
           py::arg("h"))
      .def("nu", [](const ft::PhiContext& ctx, std::uint64_t m) { return ctx.chain().level(m); },
           py::arg("m"));
  m.def("phi_closed", &ft::phi_closed, py::arg("n"), py::arg("word"));

  // ---- neighborhoods
  py::class_<ft::SubbasicSpec>(m, "SubbasicSpec")
      .def(py::init([](const std::string& h, std::uint32_t k) {
             return ft::SubbasicSpec{ft::parse_word(h), k};
           }),
           py::arg("h") = "", py::arg("k") = 1)
      .def_property_readonly("h", [](const ft::SubbasicSpec& s) { return s.h; })
      .def_property_readonly("k", [](const ft::SubbasicSpec& s) { return s.dilation; });

  py::class_<ft::SymCertificate>(m, "Certificate")
      .def("to_json", [](const ft::SymCertificate& c) { return json_str(ft::cert_to_json(c)); })
      .def("product", &ft::cert_product)
      .def("__len__", [](const ft::SymCertificate& c) { return c.factors.size(); });

  m.def("vphi_member",
        [](const ft::PhiContext& ctx, const ft::ReducedWord& w, std::uint64_t n,
           const ft::ReducedWord& h) -> py::object {
          const auto res = ft::vphi_member(ctx, w, n, h);
          if (!res) return py::none();
          return py::make_tuple(res->conjugator,
                                ft::ReducedWord::reduce({res->letter}));
        },
        py::arg("ctx"), py::arg("word"), py::arg("n"), py::arg("h") = ft::ReducedWord{});

  m.def("sym_member_bounded",
        [](const ft::PhiContext& ctx, const ft::ReducedWord& w, const ft::SubbasicSpec& spec,
           std::uint32_t max_factors, std::uint32_t max_conj) {
          const auto res = ft::sym_member_bounded(ctx, w, spec, {max_factors, max_conj});
          py::object cert = py::none();
          if (res.certificate) cert = py::cast(*res.certificate);
          return py::make_tuple(res.status == ft::Membership::Member ? "member" : "unknown",
                                cert);
        },
        py::arg("ctx"), py::arg("word"), py::arg("spec"), py::arg("max_factors") = 3,
        py::arg("max_conj") = 2);

  m.def("cert_verify", &ft::cert_verify, py::arg("ctx"), py::arg("cert"), py::arg("word"));
  m.def("cert_invert", &ft::cert_invert, py::arg("cert"));
  m.def("cert_square", &ft::cert_square, py::arg("c1"), py::arg("c2"));
  m.def("cert_conjugate", &ft::cert_conjugate, py::arg("cert"), py::arg("h"));

  // ---- finite groups + bk
  py::class_<ft::FiniteGroup>(m, "FiniteGroup")
      .def_static("cyclic", &ft::FiniteGroup::cyclic, py::arg("n"))
      .def_static("symmetric", &ft::FiniteGroup::symmetric, py::arg("n"))
      .def("order", &ft::FiniteGroup::order)
      .def("mul", &ft::FiniteGroup::mul)
      .def("inv", &ft::FiniteGroup::inv)
      .def("identity", &ft::FiniteGroup::identity);

  m.def("bk_check_finite",
        [](const ft::FiniteGroup& g, const std::vector<std::vector<std::uint16_t>>& chain,
           std::uint64_t k, std::uint32_t max_factors) {
          return json_str(ft::bk_report_to_json(ft::bk_check_finite(g, chain, k, max_factors)));
        },
        py::arg("group"), py::arg("chain"), py::arg("k"), py::arg("max_factors") = 4);

  // ---- oracles and the quotient pipeline
  py::class_<PyElem>(m, "Elem")
      .def("__eq__", [](const PyElem& a, const PyElem& b) { return a.v == b.v; });

  py::class_<ft::GroupOracle, std::shared_ptr<ft::GroupOracle>>(m, "Oracle")
      .def("id", &ft::GroupOracle::id)
      .def("identity", [](const ft::GroupOracle& o) { return PyElem{o.identity()}; })
      .def("enumerate",
           [](const ft::GroupOracle& o, std::uint64_t m) { return PyElem{o.enumerate(m)}; },
           py::arg("m"))
      .def("mul",
           [](const ft::GroupOracle& o, const PyElem& a, const PyElem& b) {
             return PyElem{o.mul(a.v, b.v)};
           })
      .def("inv", [](const ft::GroupOracle& o, const PyElem& a) { return PyElem{o.inv(a.v)}; })
      .def("basis_member",
           [](const ft::GroupOracle& o, std::uint64_t n, const PyElem& g) {
             return o.basis_member(n, g.v);
           },
           py::arg("n"), py::arg("g"))
      .def("basis_enumerate",
           [](const ft::GroupOracle& o, std::uint64_t n, std::uint64_t i) {
             return PyElem{o.basis_enumerate(n, i)};
           },
           py::arg("n"), py::arg("i"))
      .def("conj_bound",
           [](const ft::GroupOracle& o, const PyElem& g, std::uint64_t n) {
             return o.conj_bound(g.v, n);
           },
           py::arg("g"), py::arg("n"))
      .def("sq_bound", &ft::GroupOracle::sq_bound, py::arg("n"))
      .def("theta_exact",
           [](const ft::GroupOracle& o, const PyElem& g, std::uint64_t n) -> py::object {
             const auto t = o.theta_exact(g.v, n);
             if (!t) return py::none();
             return py::cast(*t);
           })
      .def("format",
           [](const ft::GroupOracle& o, const PyElem& g) { return o.format(g.v); });
  m.def("make_oracle",
        [](const std::string& id) {
          return std::const_pointer_cast<ft::GroupOracle>(ft::make_oracle(id));
        },
        py::arg("id"));

  py::class_<ft::QuotientMap>(m, "QuotientMap")
      .def(py::init([](const std::string& group, const std::string& chain, std::uint32_t depth,
                       std::uint32_t n_max) {
             return new ft::QuotientMap(ft::make_oracle(group), ft::make_chain(chain), depth,
                                        n_max);
           }),
           py::arg("group"), py::arg("chain") = "dyadic", py::arg("depth") = 16,
           py::arg("n_max") = 6)
      .def("basis_indices",
           [](const ft::QuotientMap& q) { return q.basis().indices; })
      .def("f", [](ft::QuotientMap& q, std::uint64_t k) { return PyElem{q.f(k)}; },
           py::arg("k"))
      .def("f_index", &ft::QuotientMap::f_index, py::arg("k"))
      .def("f_str",
           [](ft::QuotientMap& q, std::uint64_t k) { return q.oracle().format(q.f(k)); },
           py::arg("k"))
      .def("bar_f",
           [](ft::QuotientMap& q, const ft::ReducedWord& w) { return PyElem{q.bar_f(w)}; },
           py::arg("word"))
      .def("bar_f_str",
           [](ft::QuotientMap& q, const ft::ReducedWord& w) {
             return q.oracle().format(q.bar_f(w));
           },
           py::arg("word"))
      .def("eq1",
           [](ft::QuotientMap& q, std::uint64_t k, std::uint64_t n) {
             return json_str(ft::eq1_to_json(q.verify_chain_eq1(k, n)));
           },
           py::arg("k"), py::arg("n"))
      .def("main_lemma",
           [](ft::QuotientMap& q, const ft::PhiContext& ctx, const ft::ReducedWord& w,
              std::uint64_t n) {
             return json_str(ft::main_lemma_to_json(q.verify_main_lemma(ctx, w, n), w, n));
           },
           py::arg("ctx"), py::arg("word"), py::arg("n"))
      .def("openness",
           [](ft::QuotientMap& q, std::uint64_t n, std::uint64_t prefix) {
             return json_str(ft::openness_report_to_json(q.openness_check(n, prefix)));
           },
           py::arg("n"), py::arg("prefix") = 25);

  // ---- pw demo
  m.def("pw_demo",
        [](const std::string& group, std::uint64_t seed, std::uint32_t max_sample,
           std::uint32_t max_dim, std::uint32_t max_conj, std::uint64_t max_u) {
          auto oracle = ft::make_oracle(group);
          ft::Rng rng(ft::derive_seed(seed, "pw/demo"));
          const ft::PwScenario sc =
              ft::make_pw_scenario(*oracle, rng, max_sample, max_dim, max_conj, max_u);
          const ft::OpennessTranscript t = ft::openness_witness(
              *oracle, sc.sample, sc.x_index, sc.conjugators, sc.u_index, sc.b_word);
          return json_str(ft::pw_transcript_to_json(*oracle, t));
        },
        py::arg("group") = "zp2", py::arg("seed") = 0, py::arg("max_sample") = 3,
        py::arg("max_dim") = 2, py::arg("max_conj") = 2, py::arg("max_u") = 3);

  // ---- harness
  m.def("run_suite",
        [](const std::string& config_json, bool timings) {
          const ft::RunConfig cfg = ft::RunConfig::from_json(ft::Json::parse(config_json));
          return json_str(ft::run_suite(cfg).to_json(timings));
        },
        py::arg("config_json") = "{}", py::arg("timings") = false);
}
