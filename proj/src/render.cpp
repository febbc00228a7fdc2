#include "lifs/render.hpp"

#include <cmath>
#include <ostream>

#include "lifs/errors.hpp"

namespace lifs {

RenderImage rasterize(const Space& space, const SetApprox& black, const SetApprox& grey,
                      int width) {
    if (!space.euclidean() || space.dim() > 2)
        fail(ErrorCode::SchemaError, "rendering needs a 1-d or 2-d grid space");
    if (width < 1) fail(ErrorCode::SchemaError, "render width must be positive");
    const bool flat = space.dim() == 1;
    const double w0 = space.axis_hi(0) - space.axis_lo(0);
    const double w1 = flat ? 0.0 : space.axis_hi(1) - space.axis_lo(1);
    RenderImage img;
    img.width = width;
    img.height = flat ? 1 : std::max(1, static_cast<int>(std::lround(width * w1 / w0)));
    img.pixels.assign(static_cast<size_t>(img.width) * img.height, 255);
    Coords c;
    c.x.assign(space.dim(), 0.0);
    for (int py = 0; py < img.height; ++py) {
        if (!flat)
            c.x[1] = space.axis_hi(1) - (py + 0.5) * w1 / img.height;  // top row first
        for (int px = 0; px < img.width; ++px) {
            c.x[0] = space.axis_lo(0) + (px + 0.5) * w0 / img.width;
            PointId p = space.snap(c);
            unsigned char v = 255;
            if (black.contains(p)) v = 0;
            if (grey.contains(p)) v = 128;
            img.pixels[static_cast<size_t>(py) * img.width + px] = v;
        }
    }
    return img;
}

void write_pgm(std::ostream& os, const RenderImage& img) {
    os << "P5\n" << img.width << " " << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
}

}  // namespace lifs
