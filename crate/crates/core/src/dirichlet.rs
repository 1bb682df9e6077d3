// counting-series asymptotics
