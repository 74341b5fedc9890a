from dehncube.topology import tangle, cube
