from dehncube.common import errors, graphs, lists, pandas
