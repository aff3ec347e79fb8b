#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "neqrx/image.hpp"

using namespace neqrx;
using namespace neqrx::test;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("image construction and accessors") {
  const GrayImage img(1, {255, 0, 200, 100});
  CHECK(img.order() == 1);
  CHECK(img.side() == 2);
  CHECK(img.pixel_count() == 4);
  CHECK(img.at(0, 0) == 255);
  CHECK(img.at(0, 1) == 0);
  CHECK(img.at(1, 0) == 200);
  CHECK(img.at(1, 1) == 100);
  CHECK(img[3] == 100);

  CHECK_THROWS(GrayImage(1, {1, 2, 3}));       // wrong pixel count
  CHECK_THROWS((void)img.at(2, 0));            // out of range

  const auto patched = img.with_pixel(0, 0, 254);
  CHECK(patched.at(0, 0) == 254);
  CHECK(img.at(0, 0) == 255);  // original untouched
  CHECK(patched != img);

  const auto flat = GrayImage::filled(2, 7);
  CHECK(flat.pixel_count() == 16);
  CHECK(flat[9] == 7);
}

TEST_CASE("binary PGM round trip") {
  TempFile f("neqrx_test_p5.pgm");
  const auto img = sample_image();
  write_pgm(img, f.path, true);
  CHECK(read_pgm(f.path) == img);
}

TEST_CASE("ascii PGM round trip") {
  TempFile f("neqrx_test_p2.pgm");
  std::mt19937_64 rng(7);
  const auto img = random_image(3, rng);
  write_pgm(img, f.path, false);
  CHECK(read_pgm(f.path) == img);
}

TEST_CASE("PGM parsing handles comments and whitespace") {
  TempFile f("neqrx_test_comment.pgm");
  {
    std::ofstream out(f.path);
    out << "P2\n# a comment line\n2 2\n255\n255 0\n200 100\n";
  }
  CHECK(read_pgm(f.path) == sample_image());
}

TEST_CASE("PGM error cases") {
  TempFile f("neqrx_test_bad.pgm");

  auto write_text = [&](const std::string& text) {
    std::ofstream out(f.path, std::ios::binary);
    out << text;
  };

  CHECK_THROWS(read_pgm("/no/such/file.pgm"));

  write_text("P3\n2 2\n255\n0 0 0 0\n");
  CHECK_THROWS(read_pgm(f.path));  // unsupported magic

  write_text("P2\n3 3\n255\n1 2 3 4 5 6 7 8 9\n");
  CHECK_THROWS(read_pgm(f.path));  // side not a power of two

  write_text("P2\n2 4\n255\n1 2 3 4 5 6 7 8\n");
  CHECK_THROWS(read_pgm(f.path));  // not square

  write_text("P2\n2 2\n100\n1 2 3 4\n");
  CHECK_THROWS(read_pgm(f.path));  // maxval != 255

  write_text("P2\n2 2\n255\n1 2 3\n");
  CHECK_THROWS(read_pgm(f.path));  // truncated pixel data

  write_text("P2\n2 2\n255\n1 2 3 999\n");
  CHECK_THROWS(read_pgm(f.path));  // value out of range
}
