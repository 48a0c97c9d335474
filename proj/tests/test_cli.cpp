#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "svlab/cli.hpp"
#include "svlab/mesh_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = svlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> r;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) r.push_back(l);
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> r;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      r.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  r.push_back(cur);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("svlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate then refine") {
  TempDir dir;
  const auto m = dir.file("m.svmesh");
  auto r = run({"generate", "--unit-square", "2", "--out", m});
  REQUIRE(r.code == 0);
  CHECK(r.err.rfind("# svlab ", 0) == 0);
  r = run({"refine", "--in", m, "--strategy", "incenter", "--levels", "1"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto mesh = svlab::read_mesh(in);
  CHECK(mesh.num_cells() == 24);
  CHECK(mesh.has_macro_parent());
}

TEST_CASE("Shishkin generation") {
  auto r = run({"generate", "--shishkin", "4", "--tau", "0.06"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  CHECK(svlab::read_mesh(in).num_cells() == 32);
  CHECK(run({"generate", "--shishkin", "3"}).code == 1);
  CHECK(run({"generate", "--shishkin", "4", "--unit-square", "2"}).code == 2);
  CHECK(run({"generate"}).code == 2);
}

TEST_CASE("infsup table") {
  const auto r = run({"infsup", "--n0", "2", "--strategy", "barycenter", "--levels", "3", "--pair", "sv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "level,beta,aspect,rate");
  CHECK(split(ls[1], ',').back().empty());
  const auto row3 = split(ls[3], ',');
  REQUIRE(row3.size() == 4);
  const double rate = std::stod(row3[3]);
  CHECK(rate >= 0.9);
  CHECK(rate <= 1.1);
  // Header names every resolved parameter.
  CHECK(r.err.find("levels=3") != std::string::npos);
  CHECK(r.err.find("pair=sv") != std::string::npos);
}

TEST_CASE("triplet export") {
  TempDir dir;
  const auto prefix = dir.file("ops");
  const auto r = run({"infsup", "--levels", "1", "--pair", "p2p0", "--export-triplets", prefix});
  REQUIRE(r.code == 0);
  for (const char* part : {"_K.txt", "_B.txt", "_M.txt"}) {
    std::ifstream f(prefix + part);
    REQUIRE(f.good());
    std::string line;
    std::getline(f, line);
    CHECK(split(line, ' ').size() == 3);
  }
}

TEST_CASE("quality") {
  TempDir dir;
  const auto m = dir.file("m.svmesh");
  REQUIRE(run({"generate", "--unit-square", "1", "--out", m}).code == 0);
  auto r = run({"quality", "--in", m});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "cell_id,h1,h2,h3,alpha_max,aspect,lac_pass,alpha_min");
  CHECK(ls[3].rfind("summary,", 0) == 0);
  CHECK(split(ls[1], ',')[6] == "1");

  const auto bad = dir.file("bad.svmesh");
  std::ofstream(bad) << "svmesh v1\nvertices 4\n0 0\n1 0\n2 0\n0 1\ncells 2\n0 1 3\n0 1 2\n";
  r = run({"quality", "--in", bad});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  const auto err = lines(r.err);
  REQUIRE(!err.empty());
  CHECK(err.back().rfind("error: ", 0) == 0);
  CHECK(err.back().find("cell 1") != std::string::npos);
}

TEST_CASE("parse errors and usage errors") {
  TempDir dir;
  const auto bad = dir.file("bad.svmesh");
  std::ofstream(bad) << "svmesh v1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ncells 1\n0 1 99\n";
  auto r = run({"quality", "--in", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 8") != std::string::npos);
  CHECK(run({"quality", "--in", dir.file("missing.svmesh")}).code == 1);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"infsup", "--unknown-flag"}).code == 2);
  CHECK(run({"infsup", "--pair", "taylor-hood"}).code == 2);
  CHECK(run({"refine", "--in", bad}).code == 2);
  CHECK(run({"stokes", "--mesh", bad, "--N", "8"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("local stability") {
  const auto r = run({"infsup-local", "0", "0", "1", "0", "0", "1", "--strategy", "barycenter"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "beta_local,aspect");
  CHECK(std::stod(split(ls[1], ',')[0]) > 0.0);
  CHECK(run({"infsup-local", "0", "0", "1", "0", "0"}).code == 2);
  CHECK(run({"infsup-local", "0", "0", "1", "0", "2", "0"}).code == 1);
}

TEST_CASE("stokes and convergence output") {
  auto r = run({"stokes", "--N", "4", "--eps", "0.1"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "dofs_v,dofs_p,l2_vel,h1_vel,l2_prs,linf_div,h1_norm,solver_residual,max_aspect");
  CHECK(split(ls[1], ',').size() == 9);

  TempDir dir;
  const auto m = dir.file("m.svmesh");
  REQUIRE(run({"generate", "--unit-square", "2", "--out", m}).code == 0);
  const auto m2 = dir.file("m2.svmesh");
  REQUIRE(run({"refine", "--in", m, "--strategy", "barycenter", "--out", m2}).code == 0);
  r = run({"stokes", "--mesh", m2, "--eps", "1"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 2);

  r = run({"convergence", "--N-list", "4,8", "--eps", "0.1", "--strategies", "both"});
  REQUIRE(r.code == 0);
  ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "N,strategy,dofs_v,dofs_p,l2_vel,h1_vel,l2_prs,linf_div,max_aspect");
  CHECK(ls[1].rfind("4,barycenter,", 0) == 0);
  CHECK(ls[2].rfind("4,incenter,", 0) == 0);
  CHECK(ls[4].rfind("8,incenter,", 0) == 0);
}

TEST_CASE("identical arguments give identical output") {
  const std::vector<std::string> args{"convergence", "--N-list", "4", "--eps", "0.05"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}
