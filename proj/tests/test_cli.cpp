#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgl/bigint.hpp"
#include "pgl/instance.hpp"
#include "pgl/solvers.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string command;
  if (!env_prefix.empty()) command = env_prefix + " ";
  command += std::string("\"") + PGL_BIN + "\" " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::filesystem::path write_temp_instance(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << content;
  out.close();
  return path;
}

// Drops every line mentioning the wall-clock field so reruns can be compared.
std::string strip_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.find("elapsed_s") != std::string::npos) continue;
    kept += line;
    kept += '\n';
  }
  return kept;
}

}  // namespace

TEST_CASE("solve subcommand output matches the library") {
  const CliResult r = run_cli("solve --n 10 --solver hs");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);

  const pgl::Instance instance = pgl::generate_instance(10, 16, 1);
  const pgl::SolveResult expected = pgl::solve_by_name("hs", instance, {}, {});

  CHECK(doc.at("command") == "solve");
  CHECK(doc.at("solver") == "hs");
  CHECK(doc.at("label") == "gen-n10-b16-s1");
  CHECK(doc.at("n") == 10);
  CHECK(doc.at("optimal_energy") == pgl::to_decimal(expected.optimal_energy));
  CHECK(doc.at("discrepancy") == pgl::to_decimal(expected.discrepancy));
  CHECK(doc.at("exact") == true);
  REQUIRE(doc.at("witness").is_array());
  CHECK(doc.at("witness").at(0) == 1);
  REQUIRE(doc.at("witness").size() == expected.witness.indices().size());
  for (std::size_t i = 0; i < expected.witness.indices().size(); ++i) {
    CHECK(doc.at("witness").at(i) == expected.witness.indices()[i]);
  }
  CHECK(doc.at("spins") == expected.witness.spin_string(10));
  CHECK(doc.at("stats").at("nodes_expanded").is_number());
  CHECK(doc.at("stats").at("elapsed_s").is_number());
}

TEST_CASE("exit codes by failure class") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve --n 10").exit_code == 2);            // --solver is required
  CHECK(run_cli("solve --input a.txt --n 4 --solver hs").exit_code == 2);
  CHECK(run_cli("solve --solver hs").exit_code == 3);       // no instance source
  CHECK(run_cli("solve --n 40 --solver brute").exit_code == 4);
  CHECK(run_cli("solve --n 10 --solver hs --max-nodes 5").exit_code == 3);
  CHECK(run_cli("fib --n=-5").exit_code == 3);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);

  const CliResult refused = run_cli("solve --n 6 --solver brute", "PGL_BRUTE_CAP=5");
  CHECK(refused.exit_code == 4);
  CHECK(refused.output.find("refused:") != std::string::npos);
  CHECK(run_cli("solve --n 6 --solver brute", "PGL_BRUTE_CAP=five").exit_code == 3);
  CHECK(run_cli("solve --n 6 --solver brute", "PGL_BRUTE_CAP=5").exit_code == 4);
  CHECK(run_cli("solve --n 5 --solver brute", "PGL_BRUTE_CAP=5").exit_code == 0);
}

TEST_CASE("an exhausted budget reports partial results on its own code") {
  const CliResult r = run_cli("solve --n 18 --bits 48 --solver ckk --max-nodes 1");
  CHECK(r.exit_code == 5);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc.at("exact") == false);
  CHECK(doc.at("stats").at("nodes_expanded") == 1);
  CHECK(pgl::parse_decimal(doc.at("optimal_energy").get<std::string>()) > 0);

  // the same search without a budget runs to completion on code 0
  const CliResult full = run_cli("solve --n 18 --bits 48 --solver ckk");
  CHECK(full.exit_code == 0);
  CHECK(nlohmann::json::parse(full.output).at("exact") == true);
}

TEST_CASE("thermo subcommand sweeps a file instance") {
  const auto path = write_temp_instance("pgl-cli-thermo.txt", "1 2 3\n");
  const CliResult bad = run_cli("thermo --input \"" + path.string() + "\" --betas 2,1");
  CHECK(bad.exit_code == 3);

  const CliResult r = run_cli("thermo --input \"" + path.string() + "\" --betas 0.1,1,10");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.output);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "beta,average_energy,gap_to_ground,checksum");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 3);

  std::istringstream last(rows.back());
  std::string beta_text, avg_text, gap_text;
  std::getline(last, beta_text, ',');
  std::getline(last, avg_text, ',');
  std::getline(last, gap_text, ',');
  CHECK(std::stod(beta_text) == doctest::Approx(10.0));
  CHECK(std::stod(gap_text) <= 1e-3);  // frozen ground at 0, first excited at 4
  std::filesystem::remove(path);
}

TEST_CASE("eigenspace subcommand lists the degenerate optimum") {
  const auto path = write_temp_instance("pgl-cli-eig.txt", "1 1 1 1\n");
  const CliResult r = run_cli("eigenspace --input \"" + path.string() + "\"");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc.at("optimal_energy") == "0");
  CHECK(doc.at("total_count") == 6);
  CHECK(doc.at("truncated") == false);
  REQUIRE(doc.at("configurations").size() == 6);
  CHECK(doc.at("configurations").at(0) == nlohmann::json::array({3, 4}));
  CHECK(doc.at("state_vector").at("dimension") == 6);
  CHECK(doc.at("state_vector").at("amplitude") == "1/sqrt(6)");
  CHECK(doc.at("state_vector").at("basis_labels").size() == 6);

  const CliResult truncated = run_cli("eigenspace --input \"" + path.string() + "\" --limit 4");
  REQUIRE(truncated.exit_code == 0);
  const auto tdoc = nlohmann::json::parse(truncated.output);
  CHECK(tdoc.at("truncated") == true);
  CHECK(tdoc.at("configurations").size() == 4);
  CHECK(tdoc.at("state_vector").is_null());
  std::filesystem::remove(path);
}

TEST_CASE("fib subcommand reports membership and the convergent used") {
  const CliResult member = run_cli("fib --n 832040");
  REQUIRE(member.exit_code == 0);
  const auto mdoc = nlohmann::json::parse(member.output);
  CHECK(mdoc.at("n") == "832040");
  CHECK(mdoc.at("is_fibonacci") == true);
  CHECK(mdoc.at("method") == "binet");
  CHECK(pgl::parse_decimal(mdoc.at("convergent").at("q").get<std::string>()) >= 2 * 832040);

  const CliResult non = run_cli("fib --n 9");
  REQUIRE(non.exit_code == 0);
  CHECK(nlohmann::json::parse(non.output).at("is_fibonacci") == false);
}

TEST_CASE("fock subcommand decomposes the fixed-total eigenspace") {
  const CliResult r = run_cli("fock --total 4");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc.at("total_particles") == 4);
  CHECK(doc.at("vacuum_present") == false);
  REQUIRE(doc.at("fibonacci").size() == 1);
  CHECK(doc.at("fibonacci").at(0) == nlohmann::json::array({"2", "1", "1"}));
  REQUIRE(doc.at("non_fibonacci").size() == 2);
  CHECK(doc.at("non_fibonacci").at(0) == nlohmann::json::array({"2", "0", "2"}));
  CHECK(doc.at("non_fibonacci").at(1) == nlohmann::json::array({"2", "2", "0"}));
}

TEST_CASE("reruns are byte-identical once timing lines are removed") {
  for (const std::string& args :
       {std::string("solve --n 14 --solver ss"), std::string("eigenspace --n 9 --bits 4"),
        std::string("fib --n 75025"), std::string("fock --total 12")}) {
    const CliResult first = run_cli(args);
    const CliResult second = run_cli(args);
    CAPTURE(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(strip_timing(first.output) == strip_timing(second.output));
  }
}
