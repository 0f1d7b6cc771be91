package com.example.shop;

public interface Inventory {
    int stockOf(String sku);

    boolean isDiscontinued(String sku);

    String warehouseOf(String sku);
}
