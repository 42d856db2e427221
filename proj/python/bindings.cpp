#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "padicflats/counting.hpp"
#include "padicflats/expectation.hpp"
#include "padicflats/jacobian.hpp"
#include "padicflats/linalg.hpp"
#include "padicflats/volkenborn.hpp"

namespace py = pybind11;
using namespace padicflats;

namespace {

// Big integers cross the boundary as Python ints, rationals as "num/den".
py::int_ to_py(const BigInt& x) { return py::int_(py::str(x.get_str())); }
BigInt from_py(const py::int_& x) { return BigInt(py::str(x).cast<std::string>()); }
std::string rat(const ExactRational& q) { return to_fraction_string(q); }

PadicMatrix matrix_of(const std::vector<std::vector<py::int_>>& rows, std::uint64_t p, int m) {
  const PadicContext ctx(p, m);
  const std::size_t r = rows.size(), c = rows.empty() ? 0 : rows.front().size();
  std::vector<BigInt> entries;
  for (const auto& row : rows) {
    if (row.size() != c) throw LengthMismatch("ragged matrix rows");
    for (const auto& x : row) entries.push_back(from_py(x));
  }
  return PadicMatrix(ctx, r, c, std::move(entries));
}

std::vector<std::vector<py::int_>> rows_of(const PadicMatrix& a) {
  std::vector<std::vector<py::int_>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(to_py(a(i, j)));
  }
  return out;
}

py::dict bracket(const BracketedValue& b) {
  py::dict d;
  d["lo"] = rat(b.lo);
  d["hi"] = rat(b.hi);
  return d;
}

py::dict histogram(const ValuationHistogram& h) {
  py::dict d;
  d["prime"] = h.prime;
  d["precision"] = h.precision;
  d["counts"] = h.counts;
  return d;
}

py::dict flats(std::uint64_t p, int n, int k, const std::vector<int>& degrees, const std::string& method,
               int precision, std::uint64_t samples, std::uint64_t seed, std::uint64_t guard, unsigned workers) {
  FlatCountParams params;
  if (method == "exact") {
    params.method = Method::Exact;
  } else if (method == "mc") {
    params.method = Method::MonteCarlo;
  } else {
    throw InvalidArgument("method must be 'exact' or 'mc'");
  }
  params.precision = precision;
  params.samples = samples;
  params.seed = seed;
  params.engine = {guard, workers};
  const DegreeProfile profile{n, k, degrees};
  FlatCountResult r;
  {
    py::gil_scoped_release release;
    r = expected_flats(profile, p, params);
  }
  py::dict d;
  d["p"] = p;
  d["m"] = r.precision;
  d["method"] = to_string(r.method);
  d["count"] = bracket(r.expected_count);
  d["det"] = bracket(r.det_bracket());
  d["grassmannian_volume"] = rat(r.grassmannian_factor);
  d["std_error"] = r.std_error;
  if (auto ref = reference_count(profile, p)) {
    d["reference"] = rat(*ref);
    d["pass"] = r.consistent_with(*ref);
  } else {
    d["reference"] = py::none();
    d["pass"] = py::none();
  }
  return d;
}

ClosedFormCase closed_case(const std::string& kind, int n, int k) {
  if (kind == "points") return ClosedFormCase::points(n);
  if (kind == "detmatrix") return ClosedFormCase::detmatrix(n);
  if (kind == "cubic") return ClosedFormCase::cubic();
  if (kind == "quadrics") return ClosedFormCase::quadrics();
  if (kind == "limsup_bound") return ClosedFormCase::limsup_bound();
  if (kind == "lower_bound") return ClosedFormCase::lower_bound(k, n);
  throw InvalidArgument("unknown closed form '" + kind + "'");
}

py::dict fibers(const MinorMapReport& r, const std::function<BigInt(int)>& formula) {
  py::dict d;
  py::dict sizes;
  for (const auto& [pt, c] : r.fiber_sizes) {
    py::tuple key(pt.coords.size());
    for (std::size_t i = 0; i < pt.coords.size(); ++i) key[i] = pt.coords[i];
    sizes[key] = c;
  }
  d["fiber_sizes"] = sizes;
  d["domain_size"] = r.domain_size;
  d["matches_formula"] = r.fibers_match(formula);
  d["depends_only_on_min_valuation"] = r.depends_only_on_min_valuation();
  d["surjective"] = r.surjective();
  return d;
}

PolynomialIntegrand integrand_of(int variables, const std::vector<std::pair<std::string, Exponents>>& terms) {
  std::vector<PolynomialIntegrand::Term> t;
  for (const auto& [c, e] : terms) t.emplace_back(parse_rational(c), e);
  return PolynomialIntegrand(variables, std::move(t));
}

py::dict partial_dict(const VolkenbornPartial& s) {
  py::dict d;
  d["level"] = s.level;
  d["raw_sum"] = rat(s.raw_sum);
  d["normalized_sum"] = rat(s.normalized_sum);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Expected k-flat counts on random p-adic complete intersections";

  auto base = py::register_exception<Error>(m, "PadicFlatsError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NonUnitDenominator>(m, "NonUnitDenominator", base.ptr());
  py::register_exception<NotSquare>(m, "NotSquare", base.ptr());
  py::register_exception<SingularAtPrecision>(m, "SingularAtPrecision", base.ptr());
  py::register_exception<NotInvertible>(m, "NotInvertible", base.ptr());
  py::register_exception<NotAdmissible>(m, "NotAdmissible", base.ptr());
  py::register_exception<LengthMismatch>(m, "LengthMismatch", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());

  m.attr("DEFAULT_GUARD") = kDefaultGuard;

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def(
      "padic_of_rational",
      [](const std::string& q, std::uint64_t p, int prec) {
        return to_py(padic_of_rational(parse_rational(q), PadicContext(p, prec)).residue());
      },
      py::arg("q"), py::arg("p"), py::arg("m"), "Residue of a rational mod p^m.");
  m.def(
      "valuation",
      [](const py::int_& x, std::uint64_t p, int prec) -> py::object {
        const Valuation v = valuation(PadicApprox(PadicContext(p, prec), from_py(x)));
        return py::make_tuple(v.value(), v.is_finite());
      },
      py::arg("x"), py::arg("p"), py::arg("m"), "(value, exact): exact is False for AtLeast(m).");
  m.def(
      "abs_p",
      [](const py::int_& x, std::uint64_t p, int prec) {
        return bracket(abs_p(PadicApprox(PadicContext(p, prec), from_py(x))));
      },
      py::arg("x"), py::arg("p"), py::arg("m"));

  m.def(
      "det_residue",
      [](const std::vector<std::vector<py::int_>>& rows, std::uint64_t p, int prec) {
        return to_py(det_residue(matrix_of(rows, p, prec)).residue());
      },
      py::arg("rows"), py::arg("p"), py::arg("m"));
  m.def(
      "smith_decompose",
      [](const std::vector<std::vector<py::int_>>& rows, std::uint64_t p, int prec) {
        const auto s = smith_decompose(matrix_of(rows, p, prec));
        py::dict d;
        d["exponents"] = s.exponents;
        d["left"] = rows_of(s.left);
        d["right"] = rows_of(s.right);
        return d;
      },
      py::arg("rows"), py::arg("p"), py::arg("m"));
  m.def("gl_volume", [](int n, std::uint64_t p) { return rat(gl_volume(n, VolumeTable(p))); }, py::arg("n"),
        py::arg("p"));
  m.def(
      "det_level_volume",
      [](int n, int ell, std::uint64_t p) { return rat(det_level_volume(n, ell, VolumeTable(p))); }, py::arg("n"),
      py::arg("ell"), py::arg("p"));
  m.def(
      "grassmannian_volume",
      [](int k, int n, std::uint64_t p) { return rat(grassmannian_volume(k, n, VolumeTable(p))); }, py::arg("k"),
      py::arg("n"), py::arg("p"));

  m.def(
      "check_codim", [](int n, int k, const std::vector<int>& d) { return check_codim({n, k, d}); }, py::arg("n"),
      py::arg("k"), py::arg("degrees"));
  m.def(
      "template_json", [](int n, int k, const std::vector<int>& d) { return build_template({n, k, d}).to_json(); },
      py::arg("n"), py::arg("k"), py::arg("degrees"));

  m.def(
      "exact_det_histogram",
      [](int n, int k, const std::vector<int>& d, std::uint64_t p, int prec, std::uint64_t guard) {
        const auto t = build_template({n, k, d});
        ValuationHistogram h;
        {
          py::gil_scoped_release release;
          h = exact_det_histogram(t, PadicContext(p, prec), {guard, 0});
        }
        return histogram(h);
      },
      py::arg("n"), py::arg("k"), py::arg("degrees"), py::arg("p"), py::arg("m"),
      py::arg("guard") = kDefaultGuard);
  m.def("expected_flats", &flats, py::arg("p"), py::arg("n"), py::arg("k"), py::arg("degrees"),
        py::arg("method") = "exact", py::arg("precision") = 0, py::arg("samples") = 200'000, py::arg("seed") = 0,
        py::arg("guard") = kDefaultGuard, py::arg("workers") = 0);
  m.def(
      "closed_form",
      [](const std::string& kind, std::uint64_t p, int n, int k) { return rat(closed_form(closed_case(kind, n, k), p)); },
      py::arg("kind"), py::arg("p"), py::arg("n") = 0, py::arg("k") = 0);
  m.def(
      "mean_smooth_zero_count",
      [](const std::vector<int>& degrees, int n, std::uint64_t p, std::uint64_t systems, std::uint64_t seed) {
        SmoothCountSummary s;
        {
          py::gil_scoped_release release;
          s = mean_smooth_zero_count(degrees, n, p, systems, seed);
        }
        return py::make_tuple(s.mean, s.std_error);
      },
      py::arg("degrees"), py::arg("n"), py::arg("p"), py::arg("systems"), py::arg("seed") = 0);

  m.def("count_A", [](int k, std::uint64_t p) { return count_A(k, p); }, py::arg("k"), py::arg("p"));
  m.def("count_B", [](int k, std::uint64_t p) { return count_B(k, p); }, py::arg("k"), py::arg("p"));
  m.def(
      "count_singular_2x2", [](std::uint64_t p, int n) { return count_singular_2x2(p, n); }, py::arg("p"),
      py::arg("n"));
  m.def(
      "det_histogram_all_matrices",
      [](int n, std::uint64_t p, int prec) { return histogram(det_histogram_all_matrices(n, p, prec)); },
      py::arg("n"), py::arg("p"), py::arg("m"));
  m.def("A_formula", [](int k, std::uint64_t p) { return to_py(A_formula(k, p)); }, py::arg("k"), py::arg("p"));
  m.def("B_formula", [](int k, std::uint64_t p) { return to_py(B_formula(k, p)); }, py::arg("k"), py::arg("p"));
  m.def(
      "minor_fibers_3x2",
      [](std::uint64_t p, int n) {
        return fibers(minor_fibers_3x2(p, n), [&](int m1) { return fiber_3x2_formula(p, n, m1); });
      },
      py::arg("p"), py::arg("n"));
  m.def(
      "minor_fibers_4x3",
      [](std::uint64_t p, int n) {
        return fibers(minor_fibers_4x3(p, n), [&](int m1) { return fiber_4x3_formula(p, n, m1); });
      },
      py::arg("p"), py::arg("n"));

  m.def(
      "volkenborn_partial",
      [](int variables, const std::vector<std::pair<std::string, Exponents>>& terms, std::uint64_t p, int level) {
        return partial_dict(volkenborn_partial(integrand_of(variables, terms), p, level));
      },
      py::arg("variables"), py::arg("terms"), py::arg("p"), py::arg("level"),
      "terms: (coefficient 'num/den', exponent list) pairs.");
  m.def(
      "cubic_det_partial", [](std::uint64_t p, int level) { return partial_dict(volkenborn_partial(cubic_det_integrand(), p, level)); },
      py::arg("p"), py::arg("level"));
  m.def(
      "padic_limit_check",
      [](const std::vector<std::pair<int, std::string>>& partials, const std::string& target, std::uint64_t p) {
        std::vector<VolkenbornPartial> ps;
        for (const auto& [level, value] : partials) {
          VolkenbornPartial s;
          s.level = level;
          s.prime = p;
          s.normalized_sum = parse_rational(value);
          ps.push_back(s);
        }
        const auto check = padic_limit_check(ps, parse_rational(target), p);
        py::list vals;
        for (const auto& [level, v] : check.valuations) {
          vals.append(py::make_tuple(level, v ? py::object(py::int_(*v)) : py::object(py::none())));
        }
        return py::make_tuple(check.pass, vals);
      },
      py::arg("partials"), py::arg("target"), py::arg("p"),
      "partials: (level, normalized sum 'num/den') pairs. Returns (pass, [(level, valuation or None)]).");
}
