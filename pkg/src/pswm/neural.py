"""Feed-forward sigmoid network trained by explicit error derivatives.

Everything here is written out by hand rather than delegated to an ML
framework: the forward pass computes each unit's total weighted input and
squashes it through the sigmoid, the loss is half the summed squared output
error, and the backward pass produces three derivative families per layer:

  ea -- how fast the error changes with a unit's activity (output layer:
        activity minus desired value; earlier layers: the weight-weighted
        sum of the next layer's ei values)
  ei -- how fast the error changes with a unit's total input
        (ea scaled by the sigmoid slope, activity * (1 - activity))
  ew -- how fast the error changes with a weight (ei scaled by the source
        unit's activity)

Thresholds are realized as bias units: every non-output layer carries one
extra unit with constant activity 1.0, so each weight matrix has one more
source row (the bias row, stored last) than the layer has units.

Model files are UTF-8 text. Line 1 is the magic ``PSWM-MODEL v1``, line 2
the space-separated layer sizes, then one line per weight-matrix row
(matrices in layer order, source rows ascending, bias row last). Floats are
written with ``repr`` so the file parses back to bit-identical doubles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

MODEL_MAGIC = "PSWM-MODEL v1"

# Maximum relative mismatch tolerated between analytic and finite-difference
# weight derivatives before a gradient check counts as failed.
GRADIENT_TOLERANCE = 1e-5


def sigmoid(x):
    """Logistic squashing function 1 / (1 + e^-x)."""
    return 1.0 / (1.0 + np.exp(-x))


def mcp_fire(inputs, weights, threshold: float) -> bool:
    """Threshold unit: fire iff the weighted input sum strictly exceeds `threshold`."""
    x = np.asarray(inputs, dtype=float)
    w = np.asarray(weights, dtype=float)
    if x.shape != w.shape or x.ndim != 1:
        raise ValueError(f"inputs and weights must be equal-length vectors, got {x.shape} and {w.shape}")
    return bool(float(x @ w) > threshold)


class Network:
    """Layered sigmoid network: layer sizes plus one weight matrix per layer pair.

    ``weights[k]`` has shape ``(layer_sizes[k] + 1, layer_sizes[k + 1])``;
    the extra source row is the bias unit.
    """

    def __init__(self, layer_sizes, weights):
        sizes = [int(s) for s in layer_sizes]
        if len(sizes) < 2 or any(s < 1 for s in sizes):
            raise ValueError(f"need at least two layers of positive size, got {sizes}")
        mats = [np.asarray(w, dtype=float) for w in weights]
        if len(mats) != len(sizes) - 1:
            raise ValueError(f"expected {len(sizes) - 1} weight matrices, got {len(mats)}")
        for k, w in enumerate(mats):
            expected = (sizes[k] + 1, sizes[k + 1])
            if w.shape != expected:
                raise ValueError(f"weight matrix {k} has shape {w.shape}, expected {expected}")
            if not np.all(np.isfinite(w)):
                raise ValueError(f"weight matrix {k} contains non-finite entries")
        self.layer_sizes = sizes
        self.weights = mats

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.layer_sizes == other.layer_sizes and all(
            np.array_equal(a, b) for a, b in zip(self.weights, other.weights)
        )

    def __repr__(self):
        return f"Network(layer_sizes={self.layer_sizes})"


@dataclass
class TrainingExample:
    """Input features with the desired output vector (entries in [0, 1])."""

    features: list[float]
    desired: list[float]


@dataclass
class Gradients:
    """Error derivatives for one example.

    ``ew[k]`` mirrors ``weights[k]``. ``ea[k]`` is the error/activity vector
    of layer k (k = 0 is the input layer). ``ei[k]`` is the error/input
    vector of layer k + 1 (input units have no squashed input).
    """

    ew: list[np.ndarray]
    ea: list[np.ndarray]
    ei: list[np.ndarray]


def forward(net: Network, features) -> list[np.ndarray]:
    """Run the forward pass; returns the activity vector of every layer.

    Layer 0 is the raw feature vector. Each later unit's total weighted
    input is the dot product of the previous layer's activities (bias unit
    included at 1.0) with its incoming weights, squashed by the sigmoid.
    """
    y = np.asarray(features, dtype=float)
    if y.shape != (net.layer_sizes[0],):
        raise ValueError(f"input length {y.shape} does not match input layer size {net.layer_sizes[0]}")
    activations = [y]
    for w in net.weights:
        augmented = np.append(activations[-1], 1.0)
        activations.append(sigmoid(augmented @ w))
    return activations


def error(output, desired) -> float:
    """Half the summed squared difference between output and desired vectors."""
    y = np.asarray(output, dtype=float)
    d = np.asarray(desired, dtype=float)
    if y.shape != d.shape:
        raise ValueError(f"output shape {y.shape} does not match desired shape {d.shape}")
    return 0.5 * float(np.sum((y - d) ** 2))


def backprop(net: Network, activations, desired) -> Gradients:
    """Backward pass over activations produced by `forward`.

    Works output-to-input: error/activity at the output layer, then per
    layer the error/input values, the weight derivatives (bias row uses
    source activity 1.0), and the previous layer's error/activity values.
    """
    n_layers = len(net.layer_sizes)
    if len(activations) != n_layers:
        raise ValueError(f"expected {n_layers} activation vectors, got {len(activations)}")
    acts = [np.asarray(a, dtype=float) for a in activations]
    for k, a in enumerate(acts):
        if a.shape != (net.layer_sizes[k],):
            raise ValueError(f"activation vector {k} has shape {a.shape}, expected ({net.layer_sizes[k]},)")
    d = np.asarray(desired, dtype=float)
    if d.shape != acts[-1].shape:
        raise ValueError(f"desired shape {d.shape} does not match output shape {acts[-1].shape}")

    ea: list[np.ndarray] = [np.zeros(0)] * n_layers
    ei: list[np.ndarray] = [np.zeros(0)] * (n_layers - 1)
    ew: list[np.ndarray] = [np.zeros(0)] * len(net.weights)

    ea[-1] = acts[-1] - d
    for k in range(n_layers - 1, 0, -1):
        y = acts[k]
        ei[k - 1] = ea[k] * y * (1.0 - y)
        augmented = np.append(acts[k - 1], 1.0)
        ew[k - 1] = np.outer(augmented, ei[k - 1])
        ea[k - 1] = net.weights[k - 1][:-1, :] @ ei[k - 1]
    return Gradients(ew=ew, ea=ea, ei=ei)


def apply_gradients(net: Network, grads: Gradients, learning_rate: float) -> Network:
    """Plain gradient descent step: every weight moves against its derivative."""
    if learning_rate <= 0.0:
        raise ValueError(f"learning rate must be positive, got {learning_rate}")
    if len(grads.ew) != len(net.weights):
        raise ValueError("gradient/weight matrix count mismatch")
    for w, g in zip(net.weights, grads.ew):
        if w.shape != g.shape:
            raise ValueError(f"gradient shape {g.shape} does not match weight shape {w.shape}")
        w -= learning_rate * g
    return net


def train(net: Network, data: list[TrainingExample], epochs: int, learning_rate: float,
          seed: int) -> tuple[Network, list[float]]:
    """Online training: one descent step per example, reshuffled each epoch.

    The shuffle order is drawn from a generator seeded with `seed`, so the
    whole run is deterministic given (seed, data order, initial weights).
    Returns the trained network and one mean-error entry per epoch, the
    error being measured on each example's pre-update forward pass.
    """
    if epochs < 0:
        raise ValueError(f"epochs must be non-negative, got {epochs}")
    if not data and epochs > 0:
        raise ValueError("cannot train on an empty example list")
    rng = np.random.default_rng(seed)
    trace: list[float] = []
    for _ in range(epochs):
        order = rng.permutation(len(data))
        total = 0.0
        for i in order:
            example = data[i]
            activations = forward(net, example.features)
            total += error(activations[-1], example.desired)
            grads = backprop(net, activations, example.desired)
            apply_gradients(net, grads, learning_rate)
        trace.append(total / len(data))
    return net, trace


def init_weights(layer_sizes, seed: int) -> Network:
    """Fresh network with weights drawn uniformly from [-0.5, 0.5].

    Draws come from numpy's seeded default generator (PCG64), one matrix per
    layer pair in layer order, so equal seeds give identical networks.
    """
    sizes = list(layer_sizes)
    if len(sizes) < 2 or any(int(s) < 1 for s in sizes):
        raise ValueError(f"need at least two layers of positive size, got {sizes}")
    rng = np.random.default_rng(seed)
    weights = [rng.uniform(-0.5, 0.5, size=(int(a) + 1, int(b))) for a, b in zip(sizes, sizes[1:])]
    return Network(sizes, weights)


def save_model(net: Network, path) -> None:
    """Write `net` to `path` in the versioned text format (see module doc)."""
    lines = [MODEL_MAGIC, " ".join(str(s) for s in net.layer_sizes)]
    for w in net.weights:
        for row in w:
            lines.append(" ".join(repr(float(v)) for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> Network:
    """Read a model written by `save_model`.

    Raises DataError on a bad magic line, malformed sizes, a row count or
    row width that disagrees with the sizes, or unparseable weights.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read model file {path}: {exc}") from exc
    if not lines or lines[0] != MODEL_MAGIC:
        raise DataError(f"not a {MODEL_MAGIC} file: {path}")
    if len(lines) < 2:
        raise DataError("truncated model file: missing layer sizes")
    try:
        sizes = [int(tok) for tok in lines[1].split()]
    except ValueError as exc:
        raise DataError(f"line 2: invalid layer sizes: {lines[1]!r}") from exc
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise DataError(f"line 2: invalid layer sizes: {sizes}")

    expected_rows = sum(s + 1 for s in sizes[:-1])
    body = lines[2:]
    if len(body) != expected_rows:
        raise DataError(f"model file has {len(body)} weight rows, expected {expected_rows}")

    weights: list[np.ndarray] = []
    pos = 0
    for src, tgt in zip(sizes, sizes[1:]):
        rows = []
        for _ in range(src + 1):
            parts = body[pos].split()
            line_no = pos + 3
            if len(parts) != tgt:
                raise DataError(f"line {line_no}: expected {tgt} weights, got {len(parts)}")
            try:
                row = [float(p) for p in parts]
            except ValueError as exc:
                raise DataError(f"line {line_no}: invalid weight value") from exc
            if not all(np.isfinite(row)):
                raise DataError(f"line {line_no}: non-finite weight value")
            rows.append(row)
            pos += 1
        weights.append(np.array(rows, dtype=float))
    return Network(sizes, weights)


def gradient_check(net: Network, features, desired, h: float = 1e-4) -> float:
    """Worst relative mismatch between analytic and central-difference gradients.

    Every weight is nudged by +/- h; the numeric slope of the error is
    compared against the backward pass's ew entry, relative to
    max(|analytic|, |numeric|, 1e-8).
    """
    activations = forward(net, features)
    grads = backprop(net, activations, desired)
    worst = 0.0
    for w, g in zip(net.weights, grads.ew):
        for i in range(w.shape[0]):
            for j in range(w.shape[1]):
                original = w[i, j]
                w[i, j] = original + h
                e_plus = error(forward(net, features)[-1], desired)
                w[i, j] = original - h
                e_minus = error(forward(net, features)[-1], desired)
                w[i, j] = original
                numeric = (e_plus - e_minus) / (2.0 * h)
                analytic = g[i, j]
                scale = max(abs(analytic), abs(numeric), 1e-8)
                worst = max(worst, abs(analytic - numeric) / scale)
    return worst


def gradient_check_suite(seed: int, cases: int = 20, h: float = 1e-4) -> float:
    """Max gradient-check mismatch over `cases` random small networks.

    Samples 2- or 3-layer shapes with sizes in 1..5, inputs in [-1, 1], and
    targets in [0, 1], all from one generator seeded with `seed`.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        n_layers = int(rng.integers(2, 4))
        sizes = [int(s) for s in rng.integers(1, 6, size=n_layers)]
        net = init_weights(sizes, int(rng.integers(0, 2**32)))
        features = rng.uniform(-1.0, 1.0, size=sizes[0])
        desired = rng.uniform(0.0, 1.0, size=sizes[-1])
        worst = max(worst, gradient_check(net, features, desired, h=h))
    return worst
