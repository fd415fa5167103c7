#!/usr/bin/env python3
"""Regenerates the tiny-model fixture and its expected judgments.

Independent NumPy implementation of the local runtime's forward pass; the
C++ tests assert that LocalBackend reproduces the judgments frozen here.
Run from this directory:  python3 generate_tiny_model.py
"""

import json
import struct
from pathlib import Path

import numpy as np
from scipy.special import erf

HERE = Path(__file__).parent
MODEL_DIR = HERE / "tiny-model"

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]",
    "a", "an", "the", "is", "not", "of", "for",
    "cat", "animal", "water", "pool", "bank", "cash", "bottle", "container",
    "slender", "liquid", "machine", "holds", "sits", "swim",
    "##s", "##ing", "##ed", ".", ",",
]

CONFIG = {
    "name": "tiny-nli-fixture",
    "hidden_size": 16,
    "num_layers": 2,
    "num_attention_heads": 2,
    "intermediate_size": 32,
    "vocab_size": len(VOCAB),
    "max_position_embeddings": 32,
    "type_vocab_size": 2,
    "num_labels": 3,
    "layer_norm_eps": 1e-5,
    "hidden_act": "gelu",
    "multilingual": False,
}

# deliberately permuted to exercise the manifest remap
LABEL_ORDER = ["neutral", "contradiction", "entailment"]

PAIRS = [
    ("the cat sits", "an animal sits"),
    ("a pool of water", "a slender, slender"),
    ("water bottle cash bank", "a container holds liquid"),
    ("the cat sits " * 12, "an animal sits"),  # long premise: truncation path
]


def build_weights(rng):
    H = CONFIG["hidden_size"]
    I = CONFIG["intermediate_size"]
    w = {}

    def normal(shape):
        return rng.normal(0.0, 0.2, size=shape).astype(np.float32)

    w["embeddings.word"] = normal((CONFIG["vocab_size"], H))
    w["embeddings.position"] = normal((CONFIG["max_position_embeddings"], H))
    w["embeddings.token_type"] = normal((2, H))
    w["embeddings.norm.weight"] = np.ones(H, dtype=np.float32)
    w["embeddings.norm.bias"] = np.zeros(H, dtype=np.float32)
    for i in range(CONFIG["num_layers"]):
        p = f"layers.{i}."
        for name in ("attention.query", "attention.key", "attention.value", "attention.output"):
            w[p + name + ".weight"] = normal((H, H))
            w[p + name + ".bias"] = normal((H,))
        w[p + "attention.norm.weight"] = np.ones(H, dtype=np.float32)
        w[p + "attention.norm.bias"] = np.zeros(H, dtype=np.float32)
        w[p + "ffn.intermediate.weight"] = normal((I, H))
        w[p + "ffn.intermediate.bias"] = normal((I,))
        w[p + "ffn.output.weight"] = normal((H, I))
        w[p + "ffn.output.bias"] = normal((H,))
        w[p + "ffn.norm.weight"] = np.ones(H, dtype=np.float32)
        w[p + "ffn.norm.bias"] = np.zeros(H, dtype=np.float32)
    w["pooler.weight"] = normal((H, H))
    w["pooler.bias"] = normal((H,))
    w["classifier.weight"] = normal((3, H))
    w["classifier.bias"] = normal((3,))
    return w


def save_safetensors(path, tensors):
    header = {}
    offset = 0
    payload = b""
    for name in sorted(tensors):
        t = tensors[name]
        raw = t.tobytes()
        header[name] = {
            "dtype": "F32",
            "shape": list(t.shape),
            "data_offsets": [offset, offset + len(raw)],
        }
        offset += len(raw)
        payload += raw
    header_bytes = json.dumps(header).encode()
    with open(path, "wb") as f:
        f.write(struct.pack("<Q", len(header_bytes)))
        f.write(header_bytes)
        f.write(payload)


def wordpiece(word, vocab_index):
    if len(word) > 100:
        return [vocab_index["[UNK]"]]
    pieces, start = [], 0
    while start < len(word):
        end = len(word)
        piece = None
        while end > start:
            cand = word[start:end]
            if start > 0:
                cand = "##" + cand
            if cand in vocab_index:
                piece = vocab_index[cand]
                break
            end -= 1
        if piece is None:
            return [vocab_index["[UNK]"]]
        pieces.append(piece)
        start = end
    return pieces


def tokenize(text, vocab_index):
    words, current = [], ""
    for ch in text:
        if ch.isspace():
            if current:
                words.append(current)
                current = ""
        elif ch in r"""!"#$%&'()*+,-./:;<=>?@[\]^_`{|}~""":
            if current:
                words.append(current)
                current = ""
            words.append(ch)
        else:
            current += ch.lower() if "A" <= ch <= "Z" else ch
    if current:
        words.append(current)
    ids = []
    for word in words:
        ids.extend(wordpiece(word, vocab_index))
    return ids


def encode_pair(premise, hypothesis, vocab_index):
    cls_id, sep_id = vocab_index["[CLS]"], vocab_index["[SEP]"]
    prem = tokenize(premise, vocab_index)
    hyp = tokenize(hypothesis, vocab_index)
    budget = CONFIG["max_position_embeddings"] - 3
    if len(prem) + len(hyp) > budget:
        assert len(hyp) + 1 <= budget, "fixture pair would be rejected"
        prem = prem[: budget - len(hyp)]
    ids = [cls_id] + prem + [sep_id] + hyp + [sep_id]
    segments = [0] * (len(prem) + 2) + [1] * (len(hyp) + 1)
    return ids, segments


def layer_norm(x, gamma, beta, eps):
    mean = x.mean(axis=-1, keepdims=True, dtype=np.float32)
    var = ((x - mean) ** 2).mean(axis=-1, keepdims=True, dtype=np.float32)
    return ((x - mean) / np.sqrt(var + np.float32(eps)) * gamma + beta).astype(np.float32)


def forward(ids, segments, w):
    H = CONFIG["hidden_size"]
    heads = CONFIG["num_attention_heads"]
    dh = H // heads
    eps = np.float32(CONFIG["layer_norm_eps"])

    h = (w["embeddings.word"][ids]
         + w["embeddings.position"][: len(ids)]
         + w["embeddings.token_type"][segments]).astype(np.float32)
    h = layer_norm(h, w["embeddings.norm.weight"], w["embeddings.norm.bias"], eps)

    scale = np.float32(1.0) / np.sqrt(np.float32(dh))
    for i in range(CONFIG["num_layers"]):
        p = f"layers.{i}."
        q = h @ w[p + "attention.query.weight"].T + w[p + "attention.query.bias"]
        k = h @ w[p + "attention.key.weight"].T + w[p + "attention.key.bias"]
        v = h @ w[p + "attention.value.weight"].T + w[p + "attention.value.bias"]
        ctx = np.zeros_like(h)
        for hd in range(heads):
            sl = slice(hd * dh, (hd + 1) * dh)
            scores = (q[:, sl] @ k[:, sl].T) * scale
            scores = scores - scores.max(axis=-1, keepdims=True)
            e = np.exp(scores, dtype=np.float32)
            probs = e / e.sum(axis=-1, keepdims=True, dtype=np.float32)
            ctx[:, sl] = probs @ v[:, sl]
        attn = ctx @ w[p + "attention.output.weight"].T + w[p + "attention.output.bias"]
        h = layer_norm(h + attn, w[p + "attention.norm.weight"], w[p + "attention.norm.bias"], eps)

        inter = h @ w[p + "ffn.intermediate.weight"].T + w[p + "ffn.intermediate.bias"]
        inter = (0.5 * inter * (1.0 + erf(inter / np.sqrt(np.float32(2.0))))).astype(np.float32)
        out = inter @ w[p + "ffn.output.weight"].T + w[p + "ffn.output.bias"]
        h = layer_norm(h + out, w[p + "ffn.norm.weight"], w[p + "ffn.norm.bias"], eps)

    pooled = np.tanh(h[0] @ w["pooler.weight"].T + w["pooler.bias"]).astype(np.float32)
    return pooled @ w["classifier.weight"].T + w["classifier.bias"]


def judgment(logits):
    # manifest remap, then a float64 softmax
    by_name = {name: float(logits[i]) for i, name in enumerate(LABEL_ORDER)}
    z = np.array([by_name["entailment"], by_name["neutral"], by_name["contradiction"]])
    e = np.exp(z - z.max())
    p = e / e.sum()
    return {"entailment": p[0], "neutral": p[1], "contradiction": p[2]}


def main():
    MODEL_DIR.mkdir(parents=True, exist_ok=True)
    rng = np.random.RandomState(12345)
    weights = build_weights(rng)
    save_safetensors(MODEL_DIR / "model.safetensors", weights)
    (MODEL_DIR / "config.json").write_text(json.dumps(CONFIG, indent=2) + "\n")
    (MODEL_DIR / "tokenizer.json").write_text(json.dumps({
        "type": "wordpiece",
        "lowercase": True,
        "unk_token": "[UNK]",
        "cls_token": "[CLS]",
        "sep_token": "[SEP]",
        "pad_token": "[PAD]",
        "continuation_prefix": "##",
        "max_word_chars": 100,
        "vocab": VOCAB,
    }, indent=2) + "\n")
    (MODEL_DIR / "labels.json").write_text(json.dumps({"order": LABEL_ORDER}) + "\n")

    vocab_index = {tok: i for i, tok in enumerate(VOCAB)}
    expected = []
    for premise, hypothesis in PAIRS:
        ids, segments = encode_pair(premise, hypothesis, vocab_index)
        logits = forward(ids, segments, weights)
        expected.append({
            "premise": premise,
            "hypothesis": hypothesis,
            "token_ids": ids,
            "segments": segments,
            "judgment": judgment(logits),
        })
    (HERE / "tiny_model_expected.json").write_text(json.dumps(expected, indent=2) + "\n")
    print(f"wrote {MODEL_DIR} and tiny_model_expected.json")


if __name__ == "__main__":
    main()
