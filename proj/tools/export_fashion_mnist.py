#!/usr/bin/env python3
# Copyright 2026 The HQC Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Export a class subset of Fashion-MNIST to IDX files.

Reads the per-class JSON rasters shipped in the `fashion-mnist` npm package
(src/clothes/<label>.json, 784 bytes per image) and writes the first
`--per-class` images of each requested class, interleaved by class, keeping
the original labels.

    npm pack fashion-mnist && tar xzf fashion-mnist-*.tgz
    tools/export_fashion_mnist.py --package package --classes 1,2,8,9 \
        --per-class 375 --out data/fashion_mnist_1289
"""

import argparse
import json
import pathlib
import struct


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--package", required=True, type=pathlib.Path, help="unpacked npm package directory")
    ap.add_argument("--classes", default="1,2,8,9")
    ap.add_argument("--per-class", type=int, default=375)
    ap.add_argument("--out", required=True, type=pathlib.Path)
    args = ap.parse_args()

    classes = [int(c) for c in args.classes.split(",")]
    per_class = {}
    for c in classes:
        data = json.loads((args.package / "src" / "clothes" / f"{c}.json").read_text())["data"]
        if len(data) < args.per_class:
            raise SystemExit(f"class {c} has only {len(data)} images")
        rows = data[: args.per_class]
        for r in rows:
            if len(r) != 784 or min(r) < 0 or max(r) > 255:
                raise SystemExit(f"class {c}: malformed raster")
        per_class[c] = rows

    images, labels = [], []
    for i in range(args.per_class):
        for c in classes:
            images.append(bytes(per_class[c][i]))
            labels.append(c)

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "images.idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        for img in images:
            f.write(img)
    with open(args.out / "labels.idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))
    print(f"wrote {len(images)} images of classes {classes} to {args.out}")


if __name__ == "__main__":
    main()
