#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>

#include "hoil/builtins.hpp"
#include "hoil/checker.hpp"
#include "hoil/eval.hpp"
#include "hoil/kinds.hpp"
#include "hoil/parser.hpp"
#include "hoil/type_algebra.hpp"

namespace py = pybind11;

namespace {

using namespace hoil;

[[noreturn]] void raise(const Error& e) {
  throw py::value_error(e.to_diagnostic("<expr>").format());
}

struct Prepared {
  Program program;
  ProcedureRegistry registry;
};

Prepared prepare(const std::string& source, const std::string& context_literal) {
  Prepared p;
  p.program = parse(source);
  if (!context_literal.empty()) {
    p.program.initial_context =
        ctx_override(p.program.initial_context, Context::parse(context_literal));
  }
  register_program_signatures(p.registry, p.program);
  add_default_builtins(p.registry);
  return p;
}

py::dict diagnostics_dict(const std::vector<Diagnostic>& diagnostics) {
  py::list items;
  for (const Diagnostic& d : diagnostics) items.append(d.format());
  py::dict out;
  out["ok"] = diagnostics.empty();
  out["diagnostics"] = items;
  return out;
}

std::string eval_expr(const std::string& source, const std::string& context,
                      bool warehouse) {
  try {
    Prepared p = prepare(source, context);
    std::vector<Diagnostic> diagnostics = check(p.program, &p.registry);
    if (!diagnostics.empty()) {
      throw py::value_error(diagnostics.front().format());
    }
    Warehouse w;
    return eval(p.program, Context{}, p.registry, warehouse ? &w : nullptr).print();
  } catch (const Error& e) {
    raise(e);
  }
}

py::tuple eval_with_stats(const std::string& source, const std::string& context) {
  try {
    Prepared p = prepare(source, context);
    std::vector<Diagnostic> diagnostics = check(p.program, &p.registry);
    if (!diagnostics.empty()) {
      throw py::value_error(diagnostics.front().format());
    }
    Warehouse w;
    std::string value = eval(p.program, Context{}, p.registry, &w).print();
    WarehouseStats s = w.stats();
    return py::make_tuple(value, py::make_tuple(s.hits, s.misses, s.entries));
  } catch (const Error& e) {
    raise(e);
  }
}

py::dict typecheck(const std::string& source, const std::string& context) {
  try {
    Prepared p = prepare(source, context);
    std::vector<Diagnostic> diagnostics = check(p.program, &p.registry);
    py::dict out = diagnostics_dict(diagnostics);
    if (diagnostics.empty()) {
      out["static_tag"] = p.program.root->static_tag
                              ? py::object(py::str(p.program.root->static_tag->print()))
                              : py::object(py::none());
    }
    return out;
  } catch (const Error& e) {
    raise(e);
  }
}

std::string join_names(const std::string& left, const std::string& right) {
  try {
    return join(TypeTag::parse(left), TypeTag::parse(right)).print();
  } catch (const Error& e) {
    raise(e);
  }
}

std::vector<std::string> kinds_names(const std::string& type_name) {
  try {
    std::vector<std::string> out;
    for (Kind k : kinds_of(TypeTag::parse(type_name))) {
      out.emplace_back(kind_name(k));
    }
    return out;
  } catch (const Error& e) {
    raise(e);
  }
}

template <Context (*Op)(const Context&, const Context&)>
std::string ctx_binary(const std::string& a, const std::string& b) {
  try {
    return Op(Context::parse(a), Context::parse(b)).print();
  } catch (const Error& e) {
    raise(e);
  }
}

std::string ctx_dims(const std::string& c, const std::vector<std::string>& dims,
                     bool hide) {
  try {
    std::set<std::string> names(dims.begin(), dims.end());
    Context parsed = Context::parse(c);
    return (hide ? ctx_hiding(parsed, names) : ctx_projection(parsed, names)).print();
  } catch (const Error& e) {
    raise(e);
  }
}

}  // namespace

PYBIND11_MODULE(_hoil, m) {
  m.doc() = "Hybrid intensional-imperative type system: evaluator, join algebra, "
            "context calculus, and host type-adapter table";

  m.def("eval_expr", &eval_expr, py::arg("source"), py::arg("context") = "",
        py::arg("warehouse") = true,
        "Evaluate an expression; returns the canonical value form, e.g. '3.5:double'.");
  m.def("eval_with_stats", &eval_with_stats, py::arg("source"), py::arg("context") = "",
        "Evaluate with the warehouse on; returns (value, (hits, misses, entries)).");
  m.def("typecheck", &typecheck, py::arg("source"), py::arg("context") = "",
        "Static check; returns {ok, diagnostics[, static_tag]}.");
  m.def("join", &join_names, py::arg("left"), py::arg("right"),
        "Union type of two type names, e.g. join('int', 'string') == 'dimension'.");
  m.def("kinds", &kinds_names, py::arg("type"),
        "Kind memberships of a type name.");
  m.def("mapping_table_text", [] { return render_mapping_table(); },
        "The host/intensional type-adapter table, both directions.");

  m.def("ctx_union", &ctx_binary<ctx_union>, py::arg("c1"), py::arg("c2"));
  m.def("ctx_difference", &ctx_binary<ctx_difference>, py::arg("c1"), py::arg("c2"));
  m.def("ctx_intersection", &ctx_binary<ctx_intersection>, py::arg("c1"), py::arg("c2"));
  m.def("ctx_override", &ctx_binary<ctx_override>, py::arg("c1"), py::arg("c2"));
  m.def("is_sub_context",
        [](const std::string& a, const std::string& b) {
          try {
            return is_sub_context(Context::parse(a), Context::parse(b));
          } catch (const Error& e) {
            raise(e);
          }
        },
        py::arg("c1"), py::arg("c2"));
  m.def("ctx_projection",
        [](const std::string& c, const std::vector<std::string>& dims) {
          return ctx_dims(c, dims, false);
        },
        py::arg("c"), py::arg("dims"));
  m.def("ctx_hiding",
        [](const std::string& c, const std::vector<std::string>& dims) {
          return ctx_dims(c, dims, true);
        },
        py::arg("c"), py::arg("dims"));

  m.attr("__version__") = "0.1.0";
}
