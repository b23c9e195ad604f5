"""Sort-pooling graph classifier.

Three graph convolution layers propagate vertex features to neighbors
(row-normalized adjacency with self-loops, tanh). Their outputs are
concatenated per vertex and fed into sort-pooling: vertices are ranked by
the last channel of the final convolution and the top rows kept (padding
when a graph is smaller). A 1D convolution stack, a dense layer, and a
softmax produce the two-class prediction.

The first member of the conv stack has kernel size and stride equal to the
per-vertex channel count, i.e. it maps each kept vertex independently; it
is implemented as a linear layer applied before pooling (padding rows then
carry its bias, which is exactly what the strided convolution yields on
zero rows). Layer widths (32, 32, 32), the head sizes, and cross-entropy
training are fixed here; the upstream description leaves them open.
"""

from __future__ import annotations

import torch
import torch.nn as nn

from .data import Batch

__all__ = ["SortPoolClassifier", "GCONV_WIDTHS"]

GCONV_WIDTHS = (32, 32, 32)


class SortPoolClassifier(nn.Module):
    def __init__(self, feature_dim: int, sortpool_k: int, dropout: float = 0.5):
        super().__init__()
        if sortpool_k < 10:
            raise ValueError("sortpool_k must be >= 10 (conv head needs the length)")
        self.feature_dim = feature_dim
        self.sortpool_k = sortpool_k
        self.gconv = nn.ModuleList()
        prev = feature_dim
        for w in GCONV_WIDTHS:
            self.gconv.append(nn.Linear(prev, w))
            prev = w
        self.node_map = nn.Linear(sum(GCONV_WIDTHS), 16)  # the stride-96 conv
        self.pool = nn.MaxPool1d(2, 2)
        self.conv2 = nn.Conv1d(16, 32, kernel_size=5)
        conv_out = 32 * ((sortpool_k // 2) - 4)
        self.dense = nn.Linear(conv_out, 128)
        self.dropout = nn.Dropout(dropout)
        self.out = nn.Linear(128, 2)

    def _sortpool(self, z: torch.Tensor, key: torch.Tensor, sizes: list[int]) -> torch.Tensor:
        """Top-k rows of z per graph by descending key; short graphs pad
        with the node_map bias (the image of a zero row)."""
        b, k, c = len(sizes), self.sortpool_k, z.shape[1]
        sizes_t = torch.as_tensor(sizes)
        max_n = int(sizes_t.max())
        graph_id = torch.repeat_interleave(torch.arange(b), sizes_t)
        offsets = torch.cumsum(sizes_t, 0) - sizes_t
        within = torch.arange(z.shape[0]) - offsets[graph_id]
        pad_row = self.node_map.bias
        padded = pad_row.expand(b, max_n, c).clone()
        padded[graph_id, within] = z
        keys = z.new_full((b, max_n), float("-inf"))
        keys[graph_id, within] = key
        kk = min(k, max_n)
        _, top = keys.topk(kk, dim=1)
        pooled = padded.gather(1, top.unsqueeze(-1).expand(b, kk, c))
        if kk < k:
            tail = pad_row.expand(b, k - kk, c)
            pooled = torch.cat([pooled, tail], dim=1)
        return pooled

    def forward(self, batch: Batch) -> torch.Tensor:
        """Logits, shape (B, 2)."""
        if batch.x.shape[1] != self.feature_dim:
            raise ValueError(f"batch has feature dim {batch.x.shape[1]}, model expects {self.feature_dim}")
        h = batch.x
        layer_outputs = []
        for lin in self.gconv:
            h = torch.tanh(lin(torch.sparse.mm(batch.a_hat, h)))
            layer_outputs.append(h)
        z = self.node_map(torch.cat(layer_outputs, dim=1))
        key = layer_outputs[-1][:, -1]
        pooled = self._sortpool(z, key, batch.sizes)  # (B, k, 16)
        c = torch.relu(pooled.transpose(1, 2))  # (B, 16, k)
        c = self.pool(c)
        c = torch.relu(self.conv2(c))
        c = c.flatten(1)
        c = torch.relu(self.dense(c))
        return self.out(self.dropout(c))

    def probabilities(self, batch: Batch) -> torch.Tensor:
        """Positive-class probability per graph (eval mode, no grad)."""
        self.eval()
        with torch.no_grad():
            return torch.softmax(self.forward(batch), dim=1)[:, 1]
