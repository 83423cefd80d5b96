#pragma once

#include <array>
#include <cstdint>

namespace cosrays {

// Escape palette. Entry 0 is reserved for non-escaping pixels; orbits leaving
// to the left use this table with red and blue swapped.
inline constexpr std::array<std::array<std::uint8_t, 3>, 256> kEscapePalette{{
    {0, 0, 0}, {64, 0, 0}, {65, 0, 0}, {66, 0, 0},
    {67, 0, 0}, {69, 0, 0}, {70, 0, 0}, {71, 0, 0},
    {72, 0, 0}, {73, 0, 0}, {75, 0, 0}, {76, 0, 0},
    {77, 0, 0}, {78, 0, 0}, {79, 0, 0}, {81, 0, 0},
    {82, 0, 0}, {83, 0, 0}, {84, 0, 0}, {85, 0, 0},
    {87, 0, 0}, {88, 0, 0}, {89, 0, 0}, {90, 0, 0},
    {91, 0, 0}, {93, 0, 0}, {94, 0, 0}, {95, 0, 0},
    {96, 0, 0}, {97, 2, 0}, {99, 4, 0}, {100, 6, 0},
    {101, 8, 0}, {102, 10, 0}, {104, 11, 0}, {105, 13, 0},
    {106, 15, 0}, {107, 17, 0}, {108, 18, 0}, {110, 20, 0},
    {111, 22, 0}, {112, 23, 0}, {113, 25, 0}, {114, 27, 0},
    {116, 28, 0}, {117, 30, 0}, {118, 32, 0}, {119, 33, 0},
    {120, 35, 0}, {122, 36, 0}, {123, 38, 0}, {124, 39, 0},
    {125, 41, 0}, {126, 43, 0}, {128, 44, 0}, {129, 46, 0},
    {130, 47, 0}, {131, 49, 0}, {132, 50, 0}, {134, 52, 0},
    {135, 53, 0}, {136, 55, 0}, {137, 56, 0}, {138, 58, 0},
    {140, 59, 0}, {141, 61, 0}, {142, 62, 0}, {143, 64, 0},
    {144, 65, 0}, {146, 67, 0}, {147, 68, 0}, {148, 69, 0},
    {149, 71, 0}, {150, 72, 0}, {152, 74, 0}, {153, 75, 0},
    {154, 77, 0}, {155, 78, 0}, {157, 80, 0}, {158, 81, 0},
    {159, 83, 0}, {160, 84, 0}, {161, 85, 0}, {163, 87, 0},
    {164, 88, 0}, {165, 90, 0}, {166, 91, 0}, {167, 92, 0},
    {169, 94, 0}, {170, 95, 0}, {171, 97, 0}, {172, 98, 0},
    {173, 100, 0}, {175, 101, 0}, {176, 102, 0}, {177, 104, 0},
    {178, 105, 0}, {179, 107, 0}, {181, 108, 0}, {182, 109, 0},
    {183, 111, 0}, {184, 112, 0}, {185, 113, 0}, {187, 115, 0},
    {188, 116, 0}, {189, 118, 0}, {190, 119, 0}, {191, 120, 0},
    {193, 122, 0}, {194, 123, 0}, {195, 124, 0}, {196, 126, 0},
    {197, 127, 0}, {199, 129, 0}, {200, 130, 0}, {201, 131, 0},
    {202, 133, 0}, {203, 134, 0}, {205, 135, 0}, {206, 137, 0},
    {207, 138, 0}, {208, 139, 0}, {210, 141, 0}, {211, 142, 0},
    {212, 144, 0}, {213, 145, 0}, {214, 146, 0}, {216, 148, 0},
    {217, 149, 0}, {218, 150, 0}, {219, 152, 0}, {220, 153, 0},
    {222, 154, 0}, {223, 156, 0}, {224, 157, 0}, {225, 158, 0},
    {226, 160, 0}, {228, 161, 0}, {229, 162, 0}, {230, 164, 0},
    {231, 165, 1}, {232, 166, 3}, {234, 168, 5}, {235, 169, 8},
    {236, 170, 10}, {237, 172, 12}, {238, 173, 14}, {240, 174, 16},
    {241, 175, 19}, {242, 177, 21}, {243, 178, 23}, {244, 179, 25},
    {246, 181, 28}, {247, 182, 30}, {248, 183, 32}, {249, 185, 34},
    {250, 186, 36}, {252, 187, 39}, {253, 189, 41}, {254, 190, 43},
    {255, 191, 45}, {255, 193, 47}, {255, 194, 50}, {255, 195, 52},
    {255, 196, 54}, {255, 198, 56}, {255, 199, 58}, {255, 200, 61},
    {255, 202, 63}, {255, 203, 65}, {255, 204, 67}, {255, 206, 69},
    {255, 207, 72}, {255, 208, 74}, {255, 209, 76}, {255, 211, 78},
    {255, 212, 81}, {255, 213, 83}, {255, 215, 85}, {255, 216, 87},
    {255, 217, 89}, {255, 218, 92}, {255, 220, 94}, {255, 221, 96},
    {255, 222, 98}, {255, 224, 100}, {255, 225, 103}, {255, 226, 105},
    {255, 227, 107}, {255, 229, 109}, {255, 230, 111}, {255, 231, 114},
    {255, 233, 116}, {255, 234, 118}, {255, 235, 120}, {255, 236, 122},
    {255, 238, 125}, {255, 239, 127}, {255, 240, 129}, {255, 241, 131},
    {255, 243, 134}, {255, 244, 136}, {255, 245, 138}, {255, 247, 140},
    {255, 248, 142}, {255, 249, 145}, {255, 250, 147}, {255, 252, 149},
    {255, 253, 151}, {255, 254, 153}, {255, 255, 156}, {255, 255, 158},
    {255, 255, 160}, {255, 255, 162}, {255, 255, 164}, {255, 255, 167},
    {255, 255, 169}, {255, 255, 171}, {255, 255, 173}, {255, 255, 175},
    {255, 255, 178}, {255, 255, 180}, {255, 255, 182}, {255, 255, 184},
    {255, 255, 187}, {255, 255, 189}, {255, 255, 191}, {255, 255, 193},
    {255, 255, 195}, {255, 255, 198}, {255, 255, 200}, {255, 255, 202},
    {255, 255, 204}, {255, 255, 206}, {255, 255, 209}, {255, 255, 211},
    {255, 255, 213}, {255, 255, 215}, {255, 255, 217}, {255, 255, 220},
    {255, 255, 222}, {255, 255, 224}, {255, 255, 226}, {255, 255, 228},
    {255, 255, 231}, {255, 255, 233}, {255, 255, 235}, {255, 255, 237},
    {255, 255, 240}, {255, 255, 242}, {255, 255, 244}, {255, 255, 246},
    {255, 255, 248}, {255, 255, 251}, {255, 255, 253}, {255, 255, 255},
}};

}  // namespace cosrays
