// Writes the deterministic stand-in test images as PPM files.

#include <filesystem>
#include <iostream>
#include <string>

#include "svdc/svdc.h"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: svdc-standins OUT_DIR [SIZE]\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  const unsigned long size = argc == 3 ? std::stoul(argv[2]) : 512;
  std::filesystem::create_directories(dir);

  const struct {
    svdc_standin kind;
    const char* name;
  } kinds[] = {{SVDC_STANDIN_GRADIENT, "gradient"}, {SVDC_STANDIN_TEXTURE, "texture"}, {SVDC_STANDIN_SHAPES, "shapes"}};

  for (const auto& k : kinds) {
    svdc_image* img = nullptr;
    svdc_status st = svdc_image_synthetic(k.kind, static_cast<uint32_t>(size), static_cast<uint32_t>(size), &img);
    if (st >= 0) {
      const std::string path = (dir / (std::string(k.name) + ".ppm")).string();
      st = svdc_image_write_ppm(img, path.c_str());
    }
    svdc_image_destroy(img);
    if (st < 0) {
      std::cerr << "svdc-standins: " << k.name << ": " << svdc_last_error_message() << "\n";
      return 1;
    }
  }
  return 0;
}
