#include "hoil/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hoil/builtins.hpp"
#include "hoil/checker.hpp"
#include "hoil/eval.hpp"
#include "hoil/kinds.hpp"
#include "hoil/parser.hpp"
#include "hoil/type_algebra.hpp"

namespace hoil {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

bool color_enabled() {
  const char* v = std::getenv("HOIL_COLOR");
  return v != nullptr && std::string_view(v) == "1";
}

Json diagnostic_json(const Diagnostic& d) {
  Json j;
  j["severity"] = d.severity;
  j["file"] = d.file;
  if (d.pos.valid()) {
    j["line"] = d.pos.line;
    j["col"] = d.pos.col;
  }
  j["message"] = d.message;
  j["code"] = std::string(error_code_name(d.code));
  return j;
}

int emit_diagnostics(const std::vector<Diagnostic>& diagnostics, bool json,
                     std::ostream& out, std::ostream& err, int code) {
  if (json) {
    Json j;
    j["ok"] = false;
    j["diagnostics"] = Json::array();
    for (const Diagnostic& d : diagnostics) j["diagnostics"].push_back(diagnostic_json(d));
    out << j.dump() << '\n';
  } else {
    const bool color = color_enabled();
    for (const Diagnostic& d : diagnostics) err << d.format(color) << '\n';
  }
  return code;
}

int emit_error(const Error& e, const std::string& file, bool json, std::ostream& out,
               std::ostream& err, int code = kExitError) {
  return emit_diagnostics({e.to_diagnostic(file)}, json, out, err, code);
}

struct InputOptions {
  std::string expression;
  std::string file;
  std::string context_literal;
  std::string signatures_file;
  bool json = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-e,--expr", in.expression, "inline expression");
  cmd->add_option("-f,--file", in.file, "program file");
  cmd->add_option("--context", in.context_literal, "initial context literal, e.g. [d:1]");
  cmd->add_option("--signatures", in.signatures_file, "host signature declaration file");
  cmd->add_flag("--json", in.json, "machine-readable output");
}

// 0 on success; fills program+registry. Emits and returns an exit code on failure.
int load_program(const InputOptions& in, Program& program, ProcedureRegistry& registry,
                 std::ostream& out, std::ostream& err) {
  std::string source;
  std::string name;
  if (!in.expression.empty() && in.file.empty()) {
    source = in.expression;
    name = "<expr>";
  } else if (in.expression.empty() && !in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) {
      Error e(ErrorCode::IoError, "cannot read file '" + in.file + "'");
      return emit_error(e, in.file, in.json, out, err, kExitIo);
    }
    std::ostringstream buffer;
    buffer << f.rdbuf();
    source = buffer.str();
    name = in.file;
  } else {
    Error e(ErrorCode::UsageError, "exactly one of -e or -f is required");
    return emit_error(e, "", in.json, out, err, kExitUsage);
  }

  try {
    program = parse(source, name);
  } catch (const Error& e) {
    return emit_error(e, name, in.json, out, err);
  }

  if (!in.signatures_file.empty()) {
    std::ifstream f(in.signatures_file);
    if (!f) {
      Error e(ErrorCode::IoError, "cannot read file '" + in.signatures_file + "'");
      return emit_error(e, in.signatures_file, in.json, out, err, kExitIo);
    }
    std::ostringstream buffer;
    buffer << f.rdbuf();
    try {
      for (auto& sig : parse_signatures(buffer.str(), in.signatures_file)) {
        program.signatures.push_back(std::move(sig));
      }
    } catch (const Error& e) {
      return emit_error(e, in.signatures_file, in.json, out, err);
    }
  }

  if (!in.context_literal.empty()) {
    try {
      Context cli_context = Context::parse(in.context_literal);
      program.initial_context = ctx_override(program.initial_context, cli_context);
    } catch (const Error& e) {
      return emit_error(e, "<context>", in.json, out, err);
    }
  }

  try {
    register_program_signatures(registry, program);
    add_default_builtins(registry);
  } catch (const Error& e) {
    return emit_error(e, name, in.json, out, err);
  }
  return 0;
}

int cmd_typecheck(const InputOptions& in, std::ostream& out, std::ostream& err) {
  Program program;
  ProcedureRegistry registry;
  if (int code = load_program(in, program, registry, out, err)) return code;
  std::vector<Diagnostic> diagnostics = check(program, &registry);
  if (!diagnostics.empty()) {
    return emit_diagnostics(diagnostics, in.json, out, err, kExitError);
  }
  const std::string tag =
      program.root->static_tag ? program.root->static_tag->print() : "";
  if (in.json) {
    Json j;
    j["ok"] = true;
    j["static_tag"] = tag.empty() ? Json(nullptr) : Json(tag);
    out << j.dump() << '\n';
  } else {
    out << (tag.empty() ? "dynamic" : tag) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const InputOptions& in, bool no_warehouse, bool stats, std::ostream& out,
             std::ostream& err) {
  Program program;
  ProcedureRegistry registry;
  if (int code = load_program(in, program, registry, out, err)) return code;
  std::vector<Diagnostic> diagnostics = check(program, &registry);
  if (!diagnostics.empty()) {
    return emit_diagnostics(diagnostics, in.json, out, err, kExitError);
  }
  Warehouse warehouse;
  try {
    Value result =
        eval(program, Context{}, registry, no_warehouse ? nullptr : &warehouse);
    const WarehouseStats s = warehouse.stats();
    if (in.json) {
      Json j;
      j["ok"] = true;
      j["value"] = result.print();
      if (stats) {
        j["stats"] = Json{{"hits", s.hits}, {"misses", s.misses}, {"entries", s.entries}};
      }
      out << j.dump() << '\n';
    } else {
      out << result.print() << '\n';
      if (stats) {
        out << "warehouse: hits=" << s.hits << " misses=" << s.misses
            << " entries=" << s.entries << '\n';
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    return emit_error(e, program.source_name, in.json, out, err);
  }
}

int cmd_join(const std::string& left, const std::string& right, bool json,
             std::ostream& out, std::ostream& err) {
  try {
    const TypeTag t1 = TypeTag::parse(left);
    const TypeTag t2 = TypeTag::parse(right);
    const TypeTag joined = join(t1, t2);
    if (json) {
      Json j;
      j["left"] = t1.print();
      j["right"] = t2.print();
      j["join"] = joined.print();
      out << j.dump() << '\n';
    } else {
      out << joined.print() << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    return emit_error(e, "", json, out, err);
  }
}

int cmd_kinds(const std::string& type_name, bool json, std::ostream& out,
              std::ostream& err) {
  try {
    const TypeTag t = TypeTag::parse(type_name);
    const std::vector<Kind> kinds = kinds_of(t);
    if (json) {
      Json j;
      j["type"] = t.print();
      j["kinds"] = Json::array();
      for (Kind k : kinds) j["kinds"].push_back(std::string(kind_name(k)));
      out << j.dump() << '\n';
    } else {
      std::string line;
      for (Kind k : kinds) {
        if (!line.empty()) line += ' ';
        line += kind_name(k);
      }
      out << line << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    return emit_error(e, "", json, out, err);
  }
}

int cmd_table(bool json, std::ostream& out) {
  if (!json) {
    out << render_mapping_table();
    return kExitOk;
  }
  Json j;
  j["return_rows"] = Json::array();
  j["param_rows"] = Json::array();
  for (const MappingRow& row : mapping_table()) {
    Json r;
    r["host"] = row.host;
    r["surface"] = row.surface;
    r["internal"] = internal_type_name(row.internal);
    if (row.half == MappingRow::Half::ReturnTypes) {
      j["return_rows"].push_back(std::move(r));
    } else {
      j["param_rows"].push_back(std::move(r));
    }
  }
  out << j.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hoil - hybrid intensional-imperative type system and evaluator"};
  app.require_subcommand(1);

  InputOptions eval_in;
  bool no_warehouse = false;
  bool stats = false;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression or program");
  add_input_options(eval_cmd, eval_in);
  eval_cmd->add_flag("--no-warehouse", no_warehouse, "disable the warehouse cache");
  eval_cmd->add_flag("--stats", stats, "print warehouse statistics");

  InputOptions check_in;
  CLI::App* check_cmd = app.add_subcommand("typecheck", "statically check a program");
  add_input_options(check_cmd, check_in);

  std::string join_left, join_right;
  bool join_json = false;
  CLI::App* join_cmd = app.add_subcommand("join", "union type of two types");
  join_cmd->add_option("left", join_left, "first type")->required();
  join_cmd->add_option("right", join_right, "second type")->required();
  join_cmd->add_flag("--json", join_json, "machine-readable output");

  std::string kinds_type;
  bool kinds_json = false;
  CLI::App* kinds_cmd = app.add_subcommand("kinds", "kind memberships of a type");
  kinds_cmd->add_option("type", kinds_type, "type name")->required();
  kinds_cmd->add_flag("--json", kinds_json, "machine-readable output");

  bool table_json = false;
  CLI::App* table_cmd = app.add_subcommand("table", "print the type-adapter table");
  table_cmd->add_flag("--json", table_json, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("hoil");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << " (usage-error)" << '\n';
    return kExitUsage;
  }

  if (eval_cmd->parsed()) return cmd_eval(eval_in, no_warehouse, stats, out, err);
  if (check_cmd->parsed()) return cmd_typecheck(check_in, out, err);
  if (join_cmd->parsed()) return cmd_join(join_left, join_right, join_json, out, err);
  if (kinds_cmd->parsed()) return cmd_kinds(kinds_type, kinds_json, out, err);
  if (table_cmd->parsed()) return cmd_table(table_json, out);
  err << "error: missing subcommand (usage-error)\n";
  return kExitUsage;
}

}  // namespace hoil
