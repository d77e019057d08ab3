// elastomap: generate modulus maps, solve for strain fields, reconstruct
// moduli from strains, and report reconstruction errors.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "elastomap/config.hpp"
#include "elastomap/error.hpp"
#include "elastomap/field_io.hpp"
#include "elastomap/pipeline.hpp"

namespace em = elastomap;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

int exit_code(em::ErrorCode code) {
  switch (code) {
    case em::ErrorCode::ConfigError:
    case em::ErrorCode::UnsupportedDimension:
      return kUsage;
    case em::ErrorCode::IoError:
    case em::ErrorCode::BadMagic:
    case em::ErrorCode::TruncatedPayload:
    case em::ErrorCode::UnsupportedVersion:
      return kIo;
    default:
      return kNumerical;
  }
}

struct ConfigArgs {
  std::string file;
  std::map<std::string, std::string> values;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.file, "Configuration file (key = value lines)");
  for (const auto& key : em::config_keys()) {
    cmd->add_option("--" + key, args.values[key], "Override config key '" + key + "'");
  }
}

em::RunConfig load_config(const CLI::App* cmd, const ConfigArgs& args) {
  em::ConfigEntries file;
  if (!args.file.empty()) file = em::read_config_file(args.file);
  em::ConfigEntries flags;
  for (const auto& [key, value] : args.values) {
    if (cmd->count("--" + key) > 0) flags.values[key] = {value, 0};
  }
  return em::build_config(file, flags);
}

void print_manifest(const em::Manifest& m) {
  for (const auto& f : m.files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strain-to-modulus map reconstruction"};
  app.require_subcommand(1);

  struct Stage {
    const char* name;
    const char* help;
    em::Manifest (*run)(const em::RunConfig&);
  };
  const Stage stages[] = {
      {"generate", "Write reference modulus maps", em::stage_generate},
      {"solve", "Compute one strain field per load", em::stage_solve},
      {"reconstruct", "Rebuild modulus maps and error maps from strains", em::stage_reconstruct},
      {"report", "Write the summary report from existing outputs", em::stage_report},
      {"run", "generate, solve, reconstruct and report", em::run_pipeline},
  };
  std::map<std::string, ConfigArgs> args;
  std::map<std::string, CLI::App*> cmds;
  for (const auto& s : stages) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_config_options(cmd, args[s.name]);
    cmds[s.name] = cmd;
  }

  CLI::App* validate = app.add_subcommand("validate", "Run the closed-form oracle checks");

  std::string export_in;
  std::string export_out;
  CLI::App* exporter = app.add_subcommand("export", "Convert a field file to CSV");
  exporter->add_option("input", export_in, "Field file")->required();
  exporter->add_option("output", export_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      bool ok = true;
      for (const auto& line : em::stage_validate()) {
        std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << ": " << line.detail << '\n';
        ok = ok && line.pass;
      }
      return ok ? kOk : kNumerical;
    }
    if (exporter->parsed()) {
      em::write_csv(export_out, em::read_field(export_in));
      std::cout << export_out << '\n';
      return kOk;
    }
    for (const auto& s : stages) {
      CLI::App* cmd = cmds[s.name];
      if (!cmd->parsed()) continue;
      const em::RunConfig cfg = load_config(cmd, args[s.name]);
      print_manifest(s.run(cfg));
      if (std::string(s.name) == "report" || std::string(s.name) == "run") {
        std::cout << '\n' << em::build_report(cfg);
      }
      return kOk;
    }
  } catch (const em::Error& e) {
    std::cerr << "elastomap: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "elastomap: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
