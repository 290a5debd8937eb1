#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qtl/errors.hpp"
#include "qtl/io.hpp"
#include "qtl/verify.hpp"

using qtl::CycloNum;
using qtl::DKey;
using qtl::GKey;
using qtl::TorusSpec;
namespace io = qtl::io;

namespace {

const TorusSpec E1(2, {2});
const TorusSpec E2(2, {3});
const TorusSpec E3(3, {2});

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("qtl_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

long long binom(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Spec, JsonRoundtripAndBuiltins) {
  for (const auto* s : {&E1, &E2, &E3}) EXPECT_EQ(io::spec_from_json(io::spec_to_json(*s)), *s);
  EXPECT_EQ(io::builtin_spec("E1"), E1);
  EXPECT_EQ(io::builtin_spec("E2"), E2);
  EXPECT_EQ(io::load_spec("e3"), E3);
  const auto s = io::spec_from_json(io::Json::parse(R"({"d":2,"z":1,"k":[3],"L":3})"));
  EXPECT_EQ(s, E2);
  EXPECT_THROW(io::builtin_spec("E9"), qtl::InvalidSpec);
}

TEST(Spec, RejectsBadFiles) {
  EXPECT_THROW(io::spec_from_json(io::Json::parse(R"({"z":1,"k":[3]})")), qtl::ParseError);
  EXPECT_THROW(io::spec_from_json(io::Json::parse(R"({"d":2,"z":2,"k":[3]})")), qtl::InvalidSpec);
  EXPECT_THROW(io::spec_from_json(io::Json::parse(R"({"d":"two","k":[3]})")), qtl::ParseError);
  EXPECT_THROW(io::spec_from_json(io::Json::parse("[1,2]")), qtl::ParseError);
  EXPECT_THROW(io::spec_from_json(io::Json::parse(R"({"d":1,"z":0,"k":[]})")), qtl::InvalidSpec);
  EXPECT_THROW(io::load_spec("/nonexistent/spec.json"), qtl::Error);
}

TEST(Spec, LoadFromFile) {
  const auto dir = temp_dir("spec");
  const auto path = dir + "/t.json";
  io::write_file(path, io::spec_to_json(E3).dump());
  EXPECT_EQ(io::load_spec(path), E3);
  io::write_file(path, "{not json");
  EXPECT_THROW(io::load_spec(path), qtl::ParseError);
}

TEST(Matrix, JsonRoundtrip) {
  const auto& f = E2.field();
  qtl::ExactMatrix m(2, 3, f);
  m(0, 1) = CycloNum::root_of_unity(f, 1);
  m(1, 2) = CycloNum(qtl::Rational(-3, 4));
  m(1, 0) = CycloNum::root_of_unity(f, 2) + CycloNum(2);
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(m), f), m);
  EXPECT_THROW(io::matrix_from_json(io::Json::parse("[[1,2],[3]]"), f), qtl::ParseError);
  EXPECT_THROW(io::matrix_from_json(io::Json::parse("[[true]]"), f), qtl::ParseError);
}

TEST(Representation, JsonRoundtrip) {
  for (const auto* s : {&E1, &E2}) {
    const auto rho = qtl::pullback(*s, qtl::reference_vw(*s));
    const auto back = io::representation_from_json(io::representation_to_json(rho));
    EXPECT_TRUE(qtl::representations_equal(rho, back));
    EXPECT_EQ(io::representation_to_json(back).dump(), io::representation_to_json(rho).dump());
  }
  const auto jet = qtl::jet_module(E1, 2);
  EXPECT_TRUE(qtl::representations_equal(jet, io::representation_from_json(io::representation_to_json(jet))));
  auto j = io::representation_to_json(qtl::pullback(E1, qtl::reference_vw(E1)));
  j["dims"].push_back(1);
  EXPECT_THROW(io::representation_from_json(j), qtl::InvalidModuleData);
}

TEST(VW, JsonRoundtrip) {
  for (const auto* s : {&E1, &E2, &E3}) {
    const auto vw = qtl::reference_vw(*s);
    const auto back = io::vw_from_json(io::vw_to_json(*s, vw), *s);
    EXPECT_EQ(back.v.dim, vw.v.dim);
    EXPECT_EQ(back.v.e, vw.v.e);
    EXPECT_EQ(back.w.grading, vw.w.grading);
    EXPECT_EQ(back.w.x, vw.w.x);
  }
  EXPECT_THROW(io::vw_from_json(io::Json::parse(R"({"v":{"dim":1}})"), E1), qtl::ParseError);
}

TEST(Parse, DElements) {
  EXPECT_EQ(io::parse_d_element(E1, "D(1;2,0)"), qtl::DElement(DKey::deriv(0, {2, 0})));
  EXPECT_EQ(io::parse_d_element(E1, "2*D(2;4,2) - T(1,0)"),
            qtl::DElement(DKey::deriv(1, {4, 2}), CycloNum(2)) - qtl::DElement(DKey::inner({1, 0})));
  EXPECT_EQ(io::parse_d_element(E1, "1/2*Z(2,0)"), qtl::DElement(DKey::central({2, 0}), CycloNum(qtl::Rational(1, 2))));
  const auto b = qtl::bracket_D(E1, DKey::deriv(0, {2, 0}), DKey::deriv(1, {2, 2}));
  EXPECT_EQ(io::parse_d_element(E1, qtl::to_string(b)), b);
  EXPECT_THROW(io::parse_d_element(E1, "D(0;2,0)"), qtl::Error);
  EXPECT_THROW(io::parse_d_element(E1, "D(1;1,0)"), qtl::MalformedBasisKey);
  EXPECT_THROW(io::parse_d_element(E1, "Q(1,0)"), qtl::ParseError);
  EXPECT_THROW(io::parse_d_element(E1, "D(1;2,0"), qtl::ParseError);
  EXPECT_THROW(io::parse_d_element(E1, "D(1;2,0) +"), qtl::ParseError);
}

TEST(Parse, WdAndGElements) {
  EXPECT_EQ(io::parse_wd_element("W(2;1,1) + 3*W(1;0,-1)"),
            qtl::WdElement(qtl::WKey{1, {1, 1}}) + qtl::WdElement(qtl::WKey{0, {0, -1}}, CycloNum(3)));
  const auto g = io::parse_g_element(E1, "XD(1,0;2) - 2*XT(0,0;1,2)");
  EXPECT_EQ(g, qtl::GTildeElement(GKey::xd({1, 0}, 1)) - qtl::GTildeElement(GKey::xt({0, 0}, {1, 2}), CycloNum(2)));
  EXPECT_EQ(io::parse_g_element(E1, qtl::to_string(g)), g);
  const auto& f = E2.field();
  const qtl::GTildeElement h(GKey::xt({1, 0}, {1, 2}), CycloNum::root_of_unity(f, 1));
  EXPECT_EQ(io::parse_g_element(E2, qtl::to_string(h)), h);
  EXPECT_THROW(io::parse_g_element(E1, "XD(0,0;1)"), qtl::MalformedBasisKey);
  EXPECT_THROW(io::parse_g_element(E1, "XT(0,0;0,1)"), qtl::MalformedBasisKey);
  EXPECT_THROW(io::parse_g_element(E1, "XD(1,0)"), qtl::ParseError);
}

TEST(CuspidalDump, DeterministicAndOrdered) {
  const auto m = qtl::build_module({CycloNum(0), CycloNum(0)}, qtl::pullback(E1, qtl::reference_vw(E1)));
  const auto a = io::cuspidal_dump(m, 2, 1).dump();
  const auto b = io::cuspidal_dump(m, 2, 1).dump();
  EXPECT_EQ(a, b);
  const auto j = io::Json::parse(a);
  ASSERT_EQ(j["weights"].size(), 25u);
  for (std::size_t i = 1; i < j["weights"].size(); ++i) {
    const auto& p = j["weights"][i - 1];
    const auto& q = j["weights"][i];
    EXPECT_LE(std::make_pair(p["class"].get<std::vector<long>>(), p["shift"].get<std::vector<long>>()),
              std::make_pair(q["class"].get<std::vector<long>>(), q["shift"].get<std::vector<long>>()));
  }
}

TEST(StructureTable, SizeMatchesBasisCount) {
  const auto t = qtl::compute_structure_constants(E2, 3);
  long long n = 0;
  for (long long deg = 0; deg <= 3; ++deg) n += 2 * binom(deg + 2, 1) + 9 * binom(deg + 1, 1);
  EXPECT_EQ(static_cast<long long>(t.basis.size()), n);
  EXPECT_EQ(static_cast<long long>(t.entries.size()), n * (n - 1) / 2);
  EXPECT_EQ(t.entries.size(), 6903u);
}

TEST(StructureTable, SerialAndParallelAgree) {
  const auto a = qtl::compute_structure_constants(E1, 3, qtl::Execution::Serial);
  const auto b = qtl::compute_structure_constants(E1, 3, qtl::Execution::Parallel);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_EQ(a.entries, b.entries);
}

TEST(StructureTable, JsonChecksum) {
  const auto t = qtl::compute_structure_constants(E1, 2);
  auto j = qtl::table_to_json(E1, t);
  const auto back = qtl::table_from_json(E1, j);
  EXPECT_EQ(back.entries, t.entries);
  EXPECT_THROW(qtl::table_from_json(E2, j), qtl::ParseError);
  j["checksum"] = "0000000000000000";
  EXPECT_THROW(qtl::table_from_json(E1, j), qtl::ParseError);
}

TEST(Cache, MissHitCorrupt) {
  const auto dir = temp_dir("cache");
  const auto first = qtl::cache_structure_constants(E1, 2, dir);
  EXPECT_EQ(first.status, qtl::CacheStatus::Miss);
  const auto second = qtl::cache_structure_constants(E1, 2, dir);
  EXPECT_EQ(second.status, qtl::CacheStatus::Hit);
  EXPECT_EQ(second.table.entries, first.table.entries);

  std::string text = io::read_file(first.path);
  const auto pos = text.find("XD(");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 3] = text[pos + 3] == '1' ? '2' : '1';
  io::write_file(first.path, text);
  const auto third = qtl::cache_structure_constants(E1, 2, dir);
  EXPECT_EQ(third.status, qtl::CacheStatus::Corrupt);
  EXPECT_EQ(third.table.entries, first.table.entries);
  EXPECT_EQ(qtl::cache_structure_constants(E1, 2, dir).status, qtl::CacheStatus::Hit);
  EXPECT_EQ(qtl::to_string(qtl::CacheStatus::Corrupt), "corrupt");
}

TEST(Checksum, Fnv1aVectors) {
  EXPECT_EQ(qtl::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(qtl::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Report, ByteIdenticalAndFlipFails) {
  qtl::RunConfig cfg;
  cfg.suites = {"xmatrix", "xidentity", "quotient"};
  const auto a = qtl::report_json(E1, cfg, qtl::run_suites(E1, cfg)).dump(2);
  const auto b = qtl::report_json(E1, cfg, qtl::run_suites(E1, cfg)).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(io::Json::parse(a)["pass"].get<bool>());
  cfg.flip_sigma = true;
  cfg.suites = {"xmatrix"};
  const auto r = qtl::run_suites(E1, cfg);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass());
  cfg.suites = {"no-such-suite"};
  EXPECT_THROW(qtl::run_suites(E1, cfg), qtl::InvalidSpec);
}
