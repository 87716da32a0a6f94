#include <doctest.h>

#include <json.hpp>
#include <random>

#include "qows/error.hpp"
#include "qows/io.hpp"
#include "test_support.hpp"

using qows::Leader;
using test::qs;
namespace io = qows::io;

TEST_CASE("quasigroup text format") {
  CHECK(io::parse_quasigroup("4\n2 1 0 3\n3 0 1 2\n1 2 3 0\n0 3 2 1\n") == test::table1());
  CHECK(io::parse_quasigroup("1\n0\n").order() == 1);
  CHECK(io::parse_quasigroup("# comment\n4\n2 1 0 3  \n# mid\n3 0 1 2\n1 2 3 0\n0 3 2 1") == test::table1());
  CHECK(io::serialize_quasigroup(test::table1()) == "4\n2 1 0 3\n3 0 1 2\n1 2 3 0\n0 3 2 1\n");

  try {
    (void)io::parse_quasigroup("4\n2 1 0 3\n");
    FAIL("no throw");
  } catch (const qows::Error& e) {
    CHECK(e.code() == qows::ErrorCode::SyntaxError);
    CHECK(e.line().has_value());
  }
  try {
    (void)io::parse_quasigroup("2\n0 1\n1 x\n");
    FAIL("no throw");
  } catch (const qows::Error& e) {
    CHECK(e.code() == qows::ErrorCode::SyntaxError);
    CHECK(e.line() == 3u);
  }
  CHECK_THROWS_AS((void)io::parse_quasigroup(""), qows::Error);
  CHECK_THROWS_AS((void)io::parse_quasigroup("2\n0 1 0\n1 0\n"), qows::Error);
  try {
    (void)io::parse_quasigroup("2\n0 1\n0 1\n");
    FAIL("no throw");
  } catch (const qows::Error& e) {
    CHECK(e.code() == qows::ErrorCode::ColNotPermutation);
  }
}

TEST_CASE("quasigroup round trip") {
  for (const auto& q : qows::enumerate_order4()) {
    const auto text = io::serialize_quasigroup(q);
    CHECK(io::parse_quasigroup(text) == q);
    CHECK(io::serialize_quasigroup(io::parse_quasigroup(text)) == text);
  }
  for (std::size_t s : {1u, 7u, 12u, 40u}) {
    const auto q = qows::random_latin(s, s);
    CHECK(io::parse_quasigroup(io::serialize_quasigroup(q)) == q);
  }
}

TEST_CASE("strings") {
  CHECK(io::parse_string("01230", 4) == qs({0, 1, 2, 3, 0}));
  CHECK(io::parse_string("0 1 2 3 0\n", 4) == qs({0, 1, 2, 3, 0}));
  CHECK(io::parse_string("11 3", 12) == qs({11, 3}));
  CHECK(io::format_string(qs({0, 3, 2})) == "0 3 2");
  CHECK(io::format_string_compact(qs({0, 3, 2, 0, 2}), 4) == "03202");
  CHECK(io::format_string_compact(qs({11, 3}), 12) == "11 3");
  CHECK_THROWS_AS((void)io::parse_string("0124", 4), qows::Error);
  CHECK_THROWS_AS((void)io::parse_string("", 4), qows::Error);
  CHECK_THROWS_AS((void)io::parse_string("0 a", 4), qows::Error);

  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t s = 1 + gen() % 20;
    qows::QString a(1 + gen() % 15);
    for (auto& x : a) x = static_cast<qows::Symbol>(gen() % s);
    CHECK(io::parse_string(io::format_string(a), s) == a);
    CHECK(io::parse_string(io::format_string_compact(a, s), s) == a);
  }
}

TEST_CASE("leader strings") {
  const qows::LeaderString l = {Leader::constant(3), Leader::constant(3), Leader::index(1), Leader::index(0)};
  CHECK(io::parse_leaders("3,3,i1,i0") == l);
  CHECK(io::parse_leaders(" 3, 3, i1 ,i0 ") == l);
  CHECK(io::format_leaders(l) == "3,3,i1,i0");
  CHECK(io::parse_leaders("").empty());
  CHECK(io::parse_leaders("()").empty());
  CHECK(io::parse_leaders(io::format_leaders({})).empty());
  CHECK(io::parse_leaders(io::format_leaders({Leader::index(12), Leader::constant(200)})) ==
        qows::LeaderString{Leader::index(12), Leader::constant(200)});
  CHECK_THROWS_AS((void)io::parse_leaders("3,,1"), qows::Error);
  CHECK_THROWS_AS((void)io::parse_leaders("ix"), qows::Error);
  CHECK_THROWS_AS((void)io::parse_leaders("-1"), qows::Error);
}

TEST_CASE("attack records") {
  qows::AttackTrace t;
  t.preimages = {qs({0, 3}), qs({1, 0})};
  t.guesses = 5;
  t.lookups = 40;
  t.elapsed = std::chrono::microseconds(1500);
  CHECK(io::format_attack_record(t, {false, false, 4}) == "preimages 2\nguesses 5\nlookups 40\nelapsed_ms 0.000\n03\n10\n");
  const auto timed = io::format_attack_record(t, {true, true, 4});
  CHECK(timed.find("elapsed_ms 1.500\n") != std::string::npos);
  CHECK(timed.find("\n3\n4\n") != std::string::npos);
}

TEST_CASE("census reports") {
  qows::ClassifySettings settings;
  qows::CensusReport r;
  r.settings = settings;
  r.entries = {{1, qows::FractalClass::Fractal, qows::FractalClass::Fractal, qows::LeaderString{}, 8},
               {2, qows::FractalClass::NonFractal, qows::FractalClass::NonFractal, std::nullopt, 4096}};
  r.fractal = {1};
  r.non_fractal = {2};
  const auto text = io::format_census_text(r);
  CHECK(text.find("\n1 fractal () 8\n") != std::string::npos);
  CHECK(text.find("\n2 non-fractal - 4096\n") != std::string::npos);
  CHECK(text.back() == '\n');

  const auto j = nlohmann::json::parse(io::format_census_json(r));
  CHECK(j.contains("parameters"));
  CHECK(j["entries"].size() == 2);
  CHECK(j["summary"]["fractal"].get<std::size_t>() == 1);
  CHECK(io::label_name(qows::FractalClass::NonFractal) == "non-fractal");
}

TEST_CASE("palette and pixmaps") {
  CHECK(io::palette(4) == std::vector<std::uint8_t>{255, 170, 85, 0});
  CHECK(io::palette(2) == std::vector<std::uint8_t>{255, 0});
  const auto p7 = io::palette(7);
  CHECK(std::set<std::uint8_t>(p7.begin(), p7.end()).size() == 7);

  const auto& q = qows::order4_by_index(46);
  const auto motif = qs({0, 1, 2, 3});
  const auto img = io::render_iterations(q, 0, motif, 8, 0);
  CHECK(img.rfind("P6\n8 1\n255\n", 0) == 0);
  const auto rows0 = io::decode_pixmap(img, 4);
  REQUIRE(rows0.size() == 1);
  CHECK(rows0[0] == qs({0, 1, 2, 3, 0, 1, 2, 3}));

  const auto bin = io::render_iterations(q, 0, motif, 40, 12);
  CHECK(bin == io::render_iterations(q, 0, motif, 40, 12));
  const auto txt = io::render_iterations(q, 0, motif, 40, 12, io::PixmapEncoding::Text);
  CHECK(txt.rfind("P3\n", 0) == 0);
  const auto rows = io::decode_pixmap(bin, 4);
  CHECK(rows == io::decode_pixmap(txt, 4));
  REQUIRE(rows.size() == 13);
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) CHECK(rows[k + 1] == qows::e_transform(q, 0, rows[k]));

  CHECK_THROWS_AS((void)io::render_iterations(q, 0, motif, 10, 2), qows::Error);
  CHECK_THROWS_AS((void)io::decode_pixmap("P6\n2 1\n255\nabc", 4), qows::Error);
  CHECK_THROWS_AS((void)io::decode_pixmap("garbage", 4), qows::Error);
}
