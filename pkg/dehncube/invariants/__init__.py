from dehncube.invariants import goeritz, checks
