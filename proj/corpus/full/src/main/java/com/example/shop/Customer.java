package com.example.shop;

public interface Customer {
    String getName();

    boolean isPremium();

    int getAge();

    String getRegion();

    String getEmail();
}
