# Unit tests package 