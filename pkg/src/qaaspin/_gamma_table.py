"""Generated by scripts/derive_gamma_table.py; do not edit by hand.

Rows are gamma_1..gamma_6, columns the 28 upper-triangle clause entries:
  +++|++-, +++|+-+, +++|+--, +++|-++, +++|-+-, +++|--+, +++|---, ++-|+-+, ++-|+--, ++-|-++, ++-|-+-, ++-|--+, ++-|---, +-+|+--, +-+|-++, +-+|-+-, +-+|--+, +-+|---, +--|-++, +--|-+-, +--|--+, +--|---, -++|-+-, -++|--+, -++|---, -+-|--+, -+-|---, --+|---
Fit sizes: [200, 400, 800]
"""

GAMMA_TABLE = (
    (0.3333333333333352, 0.3333333333333352, 0.0, 0.3333333333333352, 0.0, 0.0, -1.0000000000000027, 0.0, 0.33333333333333387, 0.0, 0.33333333333333387, 0.33333333333333387, 0.0, 0.33333333333333387, 0.0, 0.33333333333333387, 0.33333333333333387, 0.0, 0.33333333333333387, 0.0, 0.0, 0.3333333333333343, 0.33333333333333387, 0.33333333333333387, 0.0, 0.0, 0.3333333333333343, 0.3333333333333343),
    (0.0, 0.0, 0.6666666666666633, 0.0, 0.6666666666666633, 0.6666666666666633, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.6666666666666633, 0.0, 0.0, 0.0, 0.0, 0.6666666666666633, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.6666666666666633, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.3333333333333328, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.666666666666666, 0.666666666666666, 0.0, 0.666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.6666666666666663, 0.0, 0.0, 0.0, 0.0, -0.6666666666666663, -0.6666666666666663),
    (0.3333333333333341, 0.3333333333333341, 0.0, 0.3333333333333341, 0.0, 0.0, 1.0000000000000029, 0.0, -0.3333333333333343, 0.0, -0.3333333333333343, -0.3333333333333343, 0.0, -0.3333333333333343, 0.0, -0.3333333333333343, -0.3333333333333343, 0.0, -0.3333333333333343, 0.0, 0.0, 0.33333333333333387, -0.3333333333333343, -0.3333333333333343, 0.0, 0.0, 0.33333333333333387, 0.33333333333333387),
    (0.0, 0.0, 0.666666666666666, 0.0, 0.666666666666666, 0.666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.6666666666666671, 0.0, 0.0, 0.0, 0.0, -0.6666666666666671, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.6666666666666671, 0.0, 0.0, 0.0),
)
