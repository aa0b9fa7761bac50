// lie2: verify, build and compose the structures of the lie2 library from
// JSON documents. Exit status 0 = pass, 1 = fail, 2 = malformed input.

#include "lie2/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace lie2;
namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string output;
};

void print_report(const Options& opt, const Report& r) {
  if (opt.format == "json") std::cout << io::report_json(r).dump(2) << "\n";
  else std::cout << io::report_text(r);
}

int write_document(const Options& opt, const io::Document& d) {
  const std::string text = io::emit_document(d);
  if (opt.output.empty()) {
    std::cout << text;
    return cli::exit_pass;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write " << opt.output << "\n";
    return cli::exit_malformed;
  }
  return cli::exit_pass;
}

/// Maps the library's exceptions onto the exit-code contract.
template <class F>
int guarded(const std::string& context, F&& body) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    std::cerr << context << ": " << e.what() << "\n";
  } catch (const io::SchemaError& e) {
    std::cerr << context << ": schema error at " << e.what() << "\n";
  } catch (const cli::KindError& e) {
    std::cerr << context << ": " << e.what() << "\n";
  } catch (const fingpd::SizeLimitError& e) {
    std::cerr << context << ": " << e.what() << " (raise LIE2_MAX_SIZE to allow it)\n";
  } catch (const cli::InputRejected& e) {
    std::cerr << context << ": " << e.what() << "\n";
    return cli::exit_fail;
  } catch (const CocycleError& e) {
    std::cerr << context << ": " << e.what() << "\n";
    return cli::exit_fail;
  } catch (const std::exception& e) {
    std::cerr << context << ": " << e.what() << "\n";
  }
  return cli::exit_malformed;
}

int verify_one(const Options& opt, const std::string& path, const std::string& against, std::vector<Json>* batch) {
  return guarded(path, [&] {
    io::Document d = io::load_document(path);
    Report r = cli::verify_document(d);
    if (!against.empty()) cli::check_against(r, d, io::load_document(against), opt.seed);
    if (batch) batch->push_back(io::report_json(r));
    else print_report(opt, r);
    return r.passed() ? cli::exit_pass : cli::exit_fail;
  });
}

int cmd_verify(const Options& opt, const std::string& path, const std::string& against) {
  if (!fs::is_directory(path)) return verify_one(opt, path, against, nullptr);
  int worst = cli::exit_pass;
  std::vector<Json> batch;
  const bool json = opt.format == "json";
  for (const auto& file : cli::json_files(path))
    worst = std::max(worst, verify_one(opt, file.string(), against, json ? &batch : nullptr));
  if (json) std::cout << Json(batch).dump(2) << "\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Lie 2-algebras, crossed modules, bibundles and finite groupoids"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "Seed for randomized isomorphism search");
  app.add_option("-o,--output", opt.output, "Write the produced document here instead of stdout");

  std::string path, against, verb, second;

  auto* verify = app.add_subcommand("verify", "Run the full axiom suite on a document or on every *.json in a directory");
  verify->add_option("path", path, "Document or directory")->required();
  verify->add_option("--against", against, "Bibundle document to search for an isomorphism with");

  auto* build = app.add_subcommand("build", "Construct a new document from a verified one");
  build->add_option("verb", verb, "Construction")->required()->check(CLI::IsMember(lie2::cli::build_verbs()));
  build->add_option("file", path, "Input document")->required();

  auto* compose = app.add_subcommand("compose", "Compose bibundles Q o P");
  compose->add_option("Q", path, "Left bibundle")->required();
  compose->add_option("P", second, "Right bibundle")->required();

  auto* morita = app.add_subcommand("morita", "Weak invertibility of a bibundle or essential equivalence of a functor");
  morita->add_option("file", path, "Bibundle or functor document")->required();

  auto* resolve = app.add_subcommand("resolve-cocycle", "Resolve a cocycle into cells z_i with w_ij = z_i z_j^-1");
  resolve->add_option("file", path, "Cocycle document")->required();

  for (auto* sub : {verify, build, compose, morita, resolve}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : lie2::cli::exit_malformed;
  }

  if (*verify) return cmd_verify(opt, path, against);
  if (*build)
    return guarded(path, [&] { return write_document(opt, lie2::cli::build(verb, lie2::io::load_document(path))); });
  if (*compose)
    return guarded(path + " o " + second, [&] {
      return write_document(opt, lie2::cli::compose(lie2::io::load_document(path), lie2::io::load_document(second)));
    });
  if (*morita)
    return guarded(path, [&] {
      lie2::Report r = lie2::cli::morita(lie2::io::load_document(path));
      print_report(opt, r);
      return r.passed() ? lie2::cli::exit_pass : lie2::cli::exit_fail;
    });
  return guarded(path, [&] { return write_document(opt, lie2::cli::resolve(lie2::io::load_document(path))); });
}
