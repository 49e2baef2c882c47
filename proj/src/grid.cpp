#include "diurnal/grid.hpp"

#include <string>

#include "diurnal/timeutil.hpp"

namespace diurnal {

BinaryGrid complement(const BinaryGrid& b) {
    BinaryGrid out = b;
    for (auto& bit : out.bits) bit = bit ? 0 : 1;
    return out;
}

void FrameStack::validate() const {
    for (size_t i = 0; i < frames.size(); ++i) {
        const Frame& f = frames[i];
        if (i > 0) {
            if (f.t_minutes <= frames[i - 1].t_minutes)
                raise(ErrorCode::BadTimestamp,
                      "timestamps not strictly increasing at " + format_frame_timestamp(f.t_minutes));
            if (!f.grid.same_shape(frames[i - 1].grid))
                raise(ErrorCode::DimensionMismatch,
                      "frame " + format_frame_timestamp(f.t_minutes) + " is " +
                          std::to_string(f.grid.rows) + "x" + std::to_string(f.grid.cols) +
                          ", expected " + std::to_string(frames[i - 1].grid.rows) + "x" +
                          std::to_string(frames[i - 1].grid.cols));
        }
        if (f.grid.km_per_pixel != km_per_pixel)
            raise(ErrorCode::DimensionMismatch, "frame km_per_pixel differs from stack");
    }
}

}  // namespace diurnal
