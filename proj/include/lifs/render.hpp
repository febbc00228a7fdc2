#pragma once

#include <iosfwd>
#include <vector>

#include "lifs/set_approx.hpp"

namespace lifs {

// Three-level grayscale raster: background 255, `black` set 0, `grey` set 128
// (grey wins where the sets overlap, matching the endpoint-marking convention).
struct RenderImage {
    int width = 0, height = 0;
    std::vector<unsigned char> pixels;  // row-major, top row first
};

// Deterministic rasterization of grid sets: each pixel samples the cell its
// center falls in. 1-d spaces render as a single row. `width` is the pixel
// count along axis 0; the height follows the aspect ratio of the bounds.
RenderImage rasterize(const Space& space, const SetApprox& black, const SetApprox& grey,
                      int width);

// Binary P5 output: "P5\n<w> <h>\n255\n" followed by the pixel bytes.
void write_pgm(std::ostream& os, const RenderImage& img);

}  // namespace lifs
