from dehncube.spectral import specseq, bounds, cancellation
